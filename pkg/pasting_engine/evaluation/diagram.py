"""Pasting diagrams in a bicategory model and their composites.

A textual path (e1 e2) evaluates to the composite with e2 applied last,
so a tree node evaluates to ``horizontal_compose_1(right, left)``.
"""
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from pasting_engine.errors import AssignmentError, ExtendabilityError, ExtensionError, ModelError
from pasting_engine.graphs.bracketed import (
    AssocForm,
    AssociativityFailure,
    AssociativityGraph,
    BracketedGraph,
    CompositionScheme,
    ConsistentGraph,
    ExtensionCertificate,
    associativity_factors,
    check_associativity,
    origin_maps,
    verify_extension,
)
from pasting_engine.graphs.bracketing import Bracketing, BracketedPath, Dash
from pasting_engine.models.base import BicategoryModel

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PastingDiagram:
    """Objects on vertices, 1-cells on edges and 2-cells on (some) faces.

    Faces without a cell make the diagram 1-skeletal there; composing
    requires a cell on every face of the shape.
    """
    shape: BracketedGraph
    model: BicategoryModel
    vertices: Mapping[str, Any]
    edges: Mapping[str, Any]
    faces: Mapping[str, Any] = field(default_factory=dict)
    _paths: Dict[Tuple[Tuple[str, ...], Bracketing], Any] = field(
        default_factory=dict, init=False, repr=False
    )

    def __post_init__(self):
        graph = self.shape.anchored.graph
        missing = [v for v in graph.vertices if v not in self.vertices]
        if missing:
            raise AssignmentError(f"no object assigned to vertices {missing}")
        missing = [e for e in graph.edges if e not in self.edges]
        if missing:
            raise AssignmentError(f"no 1-cell assigned to edges {missing}")
        m = self.model
        for e, (tail, head) in graph.incidence.items():
            cell = self.edges[e]
            if m.one_source(cell) != self.vertices[tail] or m.one_target(cell) != self.vertices[head]:
                raise AssignmentError(f"1-cell on {e} does not run from the object of {tail} to that of {head}")
        unknown = [name for name in self.faces if not self.shape.anchored.has_face(name)]
        if unknown:
            raise AssignmentError(f"2-cells assigned to unknown faces {unknown}")
        for name, cell in self.faces.items():
            source = eval_path(self, self.shape.face_dom(name))
            target = eval_path(self, self.shape.face_cod(name))
            if not m.equal_1(m.two_source(cell), source):
                raise AssignmentError(f"2-cell on {name} does not start at the bracketed domain composite")
            if not m.equal_1(m.two_target(cell), target):
                raise AssignmentError(f"2-cell on {name} does not end at the bracketed codomain composite")

    @property
    def is_complete(self) -> bool:
        return set(self.faces) == set(self.shape.anchored.face_names)

    def with_faces(self, faces: Mapping[str, Any]) -> "PastingDiagram":
        return PastingDiagram(self.shape, self.model, self.vertices, self.edges, dict(faces))


@dataclass(frozen=True, eq=False)
class Constituent:
    """One whiskered 2-cell of a composite."""
    index: int
    face: str
    kind: str  # "face", "a" or "a⁻¹"
    label: str
    value: Any


@dataclass(frozen=True, eq=False)
class CompositeResult:
    value: Any
    trace: Tuple[Constituent, ...]
    certificate: Optional[ExtensionCertificate] = None


def fold_path(m: BicategoryModel, tree: Bracketing, cells: Sequence[Any]) -> Any:
    """Compose 1-cells listed in diagram order following ``tree``."""
    leaves = iter(cells)

    def go(node: Bracketing) -> Any:
        if isinstance(node, Dash):
            return next(leaves)
        left = go(node.left)
        right = go(node.right)
        return m.horizontal_compose_1(right, left)

    return go(tree)


def eval_path(d: PastingDiagram, p: BracketedPath) -> Any:
    """The 1-cell of a bracketed path, composed following its tree."""
    key = (p.edges, p.shape)
    if key not in d._paths:
        unknown = [e for e in p.edges if e not in d.edges]
        if unknown:
            raise ModelError(f"path uses edges {unknown} outside the diagram")
        d._paths[key] = fold_path(d.model, p.shape, [d.edges[e] for e in p.edges])
    return d._paths[key]


def _whisker_label(outer: Bracketing, edges: Sequence[str], slot: int, face_label: str) -> str:
    labels = [f"1_{e}" for e in edges]
    labels[slot] = face_label
    text = outer.render(labels)
    return text.replace(" ", " * ") if len(labels) > 1 else text


def constituent(d: PastingDiagram, g_i: ConsistentGraph) -> Any:
    """b_i(1, ..., 1, phi_F, 1, ..., 1) folded with horizontal_compose_2."""
    if g_i.face not in d.faces:
        raise AssignmentError(f"no 2-cell on face {g_i.face}")
    m = d.model
    leaves = list(g_i.prefix) + [None] + list(g_i.suffix)
    if g_i.outer.length != len(leaves):
        raise ExtensionError(f"outer bracketing of {g_i.face} has {g_i.outer.length} leaves, expected {len(leaves)}")
    cells = iter(m.identity_2(d.edges[e]) if e is not None else d.faces[g_i.face] for e in leaves)

    def go(node: Bracketing) -> Any:
        if isinstance(node, Dash):
            return next(cells)
        left = go(node.left)
        right = go(node.right)
        return m.horizontal_compose_2(right, left)

    return go(g_i.outer)


def _segment_cells(d: PastingDiagram, a: AssociativityGraph) -> List[Any]:
    face = a.consistent.face_record
    return [
        fold_path(d.model, shape, [d.edges[e] for e in face.domain.edges[start:stop]])
        for shape, (start, stop) in zip(a.segments, a.segment_intervals())
    ]


def canonical_extension_face(d: PastingDiagram, a: AssociativityGraph) -> Any:
    """The associator component (or its inverse) an associativity face must carry.

    Raises:
        ExtendabilityError: if paired edges of a carry different 1-cells
    """
    m = d.model
    for e, e_prime in a.pairs():
        if not m.equal_1(d.edges[e], d.edges[e_prime]):
            raise ExtendabilityError(f"edges {e} and {e_prime} are paired but carry different 1-cells", (e, e_prime))
    f, g, h = _segment_cells(d, a)
    if a.form is AssocForm.FORM1:
        return m.associator_inverse(f, g, h)
    return m.associator(f, g, h)


def extend_assignment(model: BicategoryModel, scheme: CompositionScheme, assoc_indices: Sequence[int],
                      vertices: Mapping[str, Any], edges: Mapping[str, Any],
                      faces: Mapping[str, Any]) -> PastingDiagram:
    """The diagram on a scheme that restricts to the given cells and puts
    canonical associator components on the associativity graphs."""
    vertex_origin, edge_origin = origin_maps(scheme, assoc_indices)
    try:
        skeleton = PastingDiagram(
            scheme.graph, model,
            {v: vertices[o] for v, o in vertex_origin.items()},
            {e: edges[o] for e, o in edge_origin.items()},
        )
    except KeyError as e:
        raise AssignmentError(f"no cell assigned to {e.args[0]}") from e
    extended = dict(faces)
    for a in associativity_factors(scheme, assoc_indices):
        extended[a.face] = canonical_extension_face(skeleton, a)
    return skeleton.with_faces(extended)


def extend_diagram(d: PastingDiagram, cert: ExtensionCertificate) -> PastingDiagram:
    return extend_assignment(d.model, cert.scheme, cert.assoc_indices, d.vertices, d.edges, d.faces)


def composite_of_scheme(d: PastingDiagram, scheme: CompositionScheme,
                        assoc_indices: Sequence[int] = ()) -> CompositeResult:
    """phi_{G_n} ... phi_{G_1} for a diagram d on the scheme's graph."""
    m = d.model
    assoc = set(assoc_indices)
    trace: List[Constituent] = []
    previous = None
    for i, factor in enumerate(scheme.factors):
        value = constituent(d, factor)
        if previous is not None and not m.equal_1(m.two_target(previous), m.two_source(value)):
            raise ModelError(f"constituent {i} does not start where constituent {i - 1} ends")
        if i in assoc:
            found = check_associativity(factor)
            if isinstance(found, AssociativityFailure):
                raise ExtensionError(f"factor {i} is not an associativity graph: {found}")
            kind = found.form.symbol
        else:
            kind = "face"
        label = _whisker_label(factor.outer, factor.prefix + (factor.face,) + factor.suffix,
                               factor.slot, kind if kind != "face" else factor.face)
        logger.debug(f"Constituent {i}: {label}")
        trace.append(Constituent(i, factor.face, kind, label, value))
        previous = value
    result = m.vertical_compose_all([c.value for c in trace])
    if not m.equal_1(m.two_source(result), eval_path(d, d.shape.dom)):
        raise ModelError("composite does not start at the bracketed global domain")
    if not m.equal_1(m.two_target(result), eval_path(d, d.shape.cod)):
        raise ModelError("composite does not end at the bracketed global codomain")
    return CompositeResult(result, tuple(trace))


def compose(d: PastingDiagram, cert: ExtensionCertificate) -> CompositeResult:
    """|phi| with respect to the composition scheme of cert.

    Raises:
        ExtensionError: if cert does not extend the shape of d
        ExtendabilityError: if an associativity graph pairs different 1-cells
    """
    if not d.is_complete:
        missing = sorted(set(d.shape.anchored.face_names) - set(d.faces))
        raise AssignmentError(f"no 2-cells on faces {missing}")
    if not verify_extension(cert, d.shape):
        raise ExtensionError("certificate does not collapse to the diagram's shape")
    extended = extend_diagram(d, cert)
    result = composite_of_scheme(extended, cert.scheme, cert.assoc_indices)
    logger.debug(f"Composite of {len(cert.scheme)} constituents ({cert.strategy})")
    return CompositeResult(result.value, result.trace, cert)
