"""Bracketed graphs, consistent and associativity graphs, collapsing, and
composition scheme extensions.

An extension is built by walking a frontier down the presentation: each
face factor is rebracketed as ((P)(dom_F))(P') with left-normalized P and
P', and the bracket mismatches between consecutive interfaces are repaired
by associativity graphs, one per associativity move. The codomain edges of
an associativity graph are fresh copies of its domain edges; collapsing it
maps every copy back onto its original.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, List, Mapping, Optional, Sequence, Set, Tuple, Union

from pasting_engine.errors import (
    BracketMismatchError,
    BracketingError,
    CollapseError,
    ExtensionError,
    GraphError,
)
from pasting_engine.graphs.anchored import (
    EXTERIOR,
    AnchoredFace,
    AnchoredGraph,
    DirectedPath,
    Graph,
    canonical_form,
    compose_with_renaming,
    fresh_name,
    relabel,
)
from pasting_engine.graphs.bracketing import (
    DASH,
    AssocMove,
    Bracketing,
    BracketedPath,
    Node,
    address_of_interval,
    apply_move,
    associator_chain,
    chain_with_frozen_segment,
    covering_address,
    first_difference,
    leaf_interval,
    replace_at,
    subtree_at,
    whisker,
)
from pasting_engine.graphs.presentation import PastingSchemePresentation, presentation_from_order

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BracketedGraph:
    """An anchored graph with bracketings on dom_G, codom_G and every face."""
    anchored: AnchoredGraph
    shape_dom: Bracketing
    shape_cod: Bracketing
    face_shapes: Mapping[str, Tuple[Bracketing, Bracketing]]

    def __post_init__(self):
        g = self.anchored
        if self.shape_dom.length != g.domain.length:
            raise BracketingError(f"domain shape has length {self.shape_dom.length}, path has {g.domain.length}")
        if self.shape_cod.length != g.codomain.length:
            raise BracketingError(f"codomain shape has length {self.shape_cod.length}, path has {g.codomain.length}")
        if set(self.face_shapes) != set(g.face_names):
            raise BracketingError(
                f"face shapes given for {sorted(self.face_shapes)}, faces are {sorted(g.face_names)}"
            )
        for face in g.faces:
            dom_shape, cod_shape = self.face_shapes[face.name]
            if dom_shape.length != face.domain.length or cod_shape.length != face.codomain.length:
                raise BracketingError(f"shapes of face {face.name} do not fit its paths")

    @property
    def dom(self) -> BracketedPath:
        return BracketedPath(self.anchored.domain, self.shape_dom)

    @property
    def cod(self) -> BracketedPath:
        return BracketedPath(self.anchored.codomain, self.shape_cod)

    def face_dom(self, name: str) -> BracketedPath:
        return BracketedPath(self.anchored.face(name).domain, self.face_shapes[name][0])

    def face_cod(self, name: str) -> BracketedPath:
        return BracketedPath(self.anchored.face(name).codomain, self.face_shapes[name][1])

    def relabel(self, vertex_map: Mapping[str, str], edge_map: Mapping[str, str]) -> "BracketedGraph":
        return BracketedGraph(relabel(self.anchored, vertex_map, edge_map),
                              self.shape_dom, self.shape_cod, dict(self.face_shapes))


def bracketed_equal(a: BracketedGraph, b: BracketedGraph) -> bool:
    """Equal up to renaming of vertices and edges, with faces matched by name."""
    return (
        canonical_form(a.anchored, match_face_names=True) == canonical_form(b.anchored, match_face_names=True)
        and a.shape_dom == b.shape_dom
        and a.shape_cod == b.shape_cod
        and dict(a.face_shapes) == dict(b.face_shapes)
    )


@dataclass(frozen=True)
class ConsistentGraph:
    """An atomic bracketed graph with the outer bracketing b witnessing
    (dom_G) = b(P, (dom_F), P') and (codom_G) = b(P, (codom_F), P')."""
    graph: BracketedGraph
    outer: Bracketing
    face: str
    prefix_length: int
    suffix_length: int

    @property
    def slot(self) -> int:
        return self.prefix_length

    @property
    def face_record(self) -> AnchoredFace:
        return self.graph.anchored.face(self.face)

    @property
    def prefix(self) -> Tuple[str, ...]:
        return self.graph.anchored.domain.edges[:self.prefix_length]

    @property
    def suffix(self) -> Tuple[str, ...]:
        edges = self.graph.anchored.domain.edges
        return edges[len(edges) - self.suffix_length:]

    @property
    def dom(self) -> BracketedPath:
        return self.graph.dom

    @property
    def cod(self) -> BracketedPath:
        return self.graph.cod


@dataclass(frozen=True)
class ConsistencyFailure:
    address: str
    reason: str

    def __str__(self) -> str:
        return f"inconsistent at {self.address or 'root'}: {self.reason}"


def check_consistent(g: BracketedGraph) -> Union[ConsistentGraph, ConsistencyFailure]:
    """Find the outer bracketing of an atomic bracketed graph, or where it breaks."""
    anchored = g.anchored
    if len(anchored.faces) != 1:
        raise GraphError(f"check_consistent needs an atomic graph, got {len(anchored.faces)} faces")
    face = anchored.faces[0]
    dom_shape, cod_shape = g.face_shapes[face.name]
    start = anchored.domain.find(face.domain)
    cod_start = anchored.codomain.find(face.codomain)
    if start is None or cod_start is None:
        raise GraphError(f"face {face.name} does not lie on the global domain and codomain")
    suffix = anchored.domain.length - start - face.domain.length
    if (cod_start != start
            or anchored.domain.edges[:start] != anchored.codomain.edges[:start]
            or anchored.codomain.length - cod_start - face.codomain.length != suffix):
        return ConsistencyFailure("", "domain and codomain are not whiskered by the same paths")

    outers = []
    for role, shape, inner, length in (("domain", g.shape_dom, dom_shape, face.domain.length),
                                       ("codomain", g.shape_cod, cod_shape, face.codomain.length)):
        address = address_of_interval(shape, start, start + length)
        if address is None:
            where = covering_address(shape, start, start + length)
            return ConsistencyFailure(where, f"the face {role} is not a single subtree of {shape}")
        if subtree_at(shape, address) != inner:
            return ConsistencyFailure(address, f"the face {role} is bracketed {subtree_at(shape, address)}, expected {inner}")
        outers.append(replace_at(shape, address, DASH))
    if outers[0] != outers[1]:
        where = first_difference(outers[0], outers[1]) or ""
        return ConsistencyFailure(where, f"outer bracketings {outers[0]} and {outers[1]} differ")
    return ConsistentGraph(g, outers[0], face.name, start, suffix)


class AssocForm(Enum):
    FORM1 = "a^-1"  # (E1 E2) E3 => E1'(E2' E3')
    FORM2 = "a"     # E1 (E2 E3) => (E1' E2') E3'

    @property
    def symbol(self) -> str:
        return "a⁻¹" if self is AssocForm.FORM1 else "a"


@dataclass(frozen=True)
class AssociativityGraph:
    """A consistent graph whose face re-associates three segments."""
    consistent: ConsistentGraph
    form: AssocForm
    segments: Tuple[Bracketing, Bracketing, Bracketing]

    @property
    def face(self) -> str:
        return self.consistent.face

    @property
    def face_shapes(self) -> Tuple[Bracketing, Bracketing]:
        return self.consistent.graph.face_shapes[self.face]

    def segment_intervals(self) -> Tuple[Tuple[int, int], ...]:
        """Leaf intervals of E1, E2, E3 within the face domain."""
        a, b, c = (s.length for s in self.segments)
        return ((0, a), (a, a + b), (a + b, a + b + c))

    def pairs(self) -> Tuple[Tuple[str, str], ...]:
        """Corresponding (E edge, E' edge) pairs."""
        face = self.consistent.face_record
        return tuple(zip(face.domain.edges, face.codomain.edges))


@dataclass(frozen=True)
class AssociativityFailure:
    reason: str

    def __str__(self) -> str:
        return self.reason


def _split(dom_shape: Bracketing, cod_shape: Bracketing) -> Optional[Tuple[AssocForm, Tuple[Bracketing, ...]]]:
    if not (isinstance(dom_shape, Node) and isinstance(cod_shape, Node)):
        return None
    if isinstance(dom_shape.left, Node) and isinstance(cod_shape.right, Node):
        source = (dom_shape.left.left, dom_shape.left.right, dom_shape.right)
        target = (cod_shape.left, cod_shape.right.left, cod_shape.right.right)
        if source == target:
            return AssocForm.FORM1, source
    if isinstance(dom_shape.right, Node) and isinstance(cod_shape.left, Node):
        source = (dom_shape.left, dom_shape.right.left, dom_shape.right.right)
        target = (cod_shape.left.left, cod_shape.left.right, cod_shape.right)
        if source == target:
            return AssocForm.FORM2, source
    return None


def check_associativity(g: ConsistentGraph) -> Union[AssociativityGraph, AssociativityFailure]:
    face = g.face_record
    dom_shape, cod_shape = g.graph.face_shapes[g.face]
    if face.domain.length != face.codomain.length:
        return AssociativityFailure(f"face {g.face} has domain and codomain of different lengths")
    found = _split(dom_shape, cod_shape)
    if found is None:
        return AssociativityFailure(f"face {g.face}: {dom_shape} => {cod_shape} is neither (xy)z => x(yz) nor x(yz) => (xy)z")
    form, segments = found
    return AssociativityGraph(g, form, tuple(segments))


def vertical_compose_bracketed(g: BracketedGraph, h: BracketedGraph) -> BracketedGraph:
    """Stack h below g; the bracketed interfaces must agree as trees.

    Raises:
        InterfaceMismatchError: if the underlying anchored graphs do not compose
        BracketMismatchError: if they do but (codom_g) and (dom_h) are bracketed differently
    """
    anchored, face_map = compose_with_renaming(g.anchored, h.anchored)
    if g.shape_cod != h.shape_dom:
        address = first_difference(g.shape_cod, h.shape_dom) or ""
        raise BracketMismatchError(
            f"bracket mismatch at {address or 'root'}: {g.cod} versus {h.dom}", address
        )
    face_shapes = dict(g.face_shapes)
    for name, shapes in h.face_shapes.items():
        face_shapes[face_map.get(name, name)] = shapes
    return BracketedGraph(anchored, g.shape_dom, h.shape_cod, face_shapes)


def collapse(h: BracketedGraph, a: AssociativityGraph) -> BracketedGraph:
    """G/A: identify each E' edge with its E partner and drop the face of a.

    The face is looked up by identifier, so associativity graphs taken
    from the uncollapsed scheme can be collapsed in any order.
    """
    name = a.face
    if not h.anchored.has_face(name):
        raise CollapseError(f"associativity face {name} is not a face of the graph")
    if tuple(h.face_shapes[name]) != tuple(a.face_shapes):
        raise CollapseError(f"face {name} is bracketed differently from the associativity graph")
    face = h.anchored.face(name)
    if face.domain.length != face.codomain.length:
        raise CollapseError(f"face {name} does not pair its domain and codomain edges")
    edge_map = dict(zip(face.codomain.edges, face.domain.edges))
    vertex_map = dict(zip(face.codomain.vertices[1:-1], face.domain.vertices[1:-1]))
    remaining = AnchoredGraph(
        graph=h.anchored.graph,
        faces=tuple(f for f in h.anchored.faces if f.name != name),
        exterior=h.anchored.exterior,
    )
    logger.debug(f"Collapsing {name}: {len(edge_map)} edges identified")
    shapes = {k: v for k, v in h.face_shapes.items() if k != name}
    return BracketedGraph(relabel(remaining, vertex_map, edge_map), h.shape_dom, h.shape_cod, shapes)


@dataclass(frozen=True)
class CompositionScheme:
    """Consistent graphs H_1 ... H_n with matching bracketed interfaces."""
    factors: Tuple[ConsistentGraph, ...]
    graph: BracketedGraph

    def __len__(self) -> int:
        return len(self.factors)

    def sublist(self, start: int, stop: int) -> "CompositionScheme":
        return compose_scheme(self.factors[start:stop])


def compose_scheme(factors: Sequence[ConsistentGraph]) -> CompositionScheme:
    if not factors:
        raise ExtensionError("a composition scheme needs at least one factor")
    graph = reduce(vertical_compose_bracketed, [f.graph for f in factors])
    names = [f.face for f in factors]
    if sorted(graph.anchored.face_names) != sorted(names):
        raise ExtensionError("factors share face identifiers")
    return CompositionScheme(tuple(factors), graph)


@dataclass(frozen=True)
class ExtensionCertificate:
    """A composition scheme H and the positions of the associativity graphs
    whose collapse yields the extended graph.

    ``chains[i]`` lists the moves inserted before face factor i; the last
    entry lists the moves after the final face factor.
    """
    scheme: CompositionScheme
    assoc_indices: Tuple[int, ...]
    face_order: Tuple[str, ...]
    chains: Tuple[Tuple[AssocMove, ...], ...]
    strategy: str = "canonical"

    def associativity_graphs(self) -> List[AssociativityGraph]:
        return associativity_factors(self.scheme, self.assoc_indices)


def associativity_factors(scheme: CompositionScheme, indices: Sequence[int]) -> List[AssociativityGraph]:
    """The factors at ``indices``, each checked to be an associativity graph."""
    graphs = []
    for i in indices:
        found = check_associativity(scheme.factors[i])
        if isinstance(found, AssociativityFailure):
            raise ExtensionError(f"factor {i} is not an associativity graph: {found}")
        graphs.append(found)
    return graphs


class _Frontier:
    """Mutable walk down a scheme under construction."""

    def __init__(self, path: DirectedPath, tree: Bracketing,
                 incidence: Mapping[str, Tuple[str, str]], taken: Set[str]):
        self.vertices = list(path.vertices)
        self.edges = list(path.edges)
        self.tree = tree
        self.incidence = dict(incidence)
        self.taken = set(taken)
        self.assoc_count = 0

    @property
    def path(self) -> DirectedPath:
        return DirectedPath(tuple(self.vertices), tuple(self.edges))

    def _fresh(self, base: str) -> str:
        name = base if base not in self.taken else fresh_name(base, self.taken)
        self.taken.add(name)
        return name

    def _factor(self, before: DirectedPath, after: DirectedPath, face: AnchoredFace,
                dom_tree: Bracketing, cod_tree: Bracketing,
                face_shapes: Tuple[Bracketing, Bracketing]) -> BracketedGraph:
        edges = set(before.edges) | set(after.edges)
        anchored = AnchoredGraph(
            graph=Graph(tuple(sorted(set(before.vertices) | set(after.vertices))),
                        {e: self.incidence[e] for e in edges}),
            faces=(face,),
            exterior=AnchoredFace(EXTERIOR, before.source, before.sink, before, after),
        )
        return BracketedGraph(anchored, dom_tree, cod_tree, {face.name: face_shapes})

    def associate(self, move: AssocMove) -> ConsistentGraph:
        """Insert the associativity graph realizing ``move`` on the current tree."""
        self.assoc_count += 1
        tag = f"a{self.assoc_count}"
        start, stop = leaf_interval(self.tree, move.position)
        redex = subtree_at(self.tree, move.position)
        new_tree = apply_move(self.tree, move)
        before = self.path

        vertex_copies = [self._fresh(f"{v}_{tag}") for v in self.vertices[start + 1:stop]]
        edge_copies = [self._fresh(f"{e}_{tag}") for e in self.edges[start:stop]]
        self.vertices[start + 1:stop] = vertex_copies
        self.edges[start:stop] = edge_copies
        for j, e in enumerate(edge_copies):
            self.incidence[e] = (self.vertices[start + j], self.vertices[start + j + 1])
        after = self.path

        face = AnchoredFace(self._fresh(f"assoc{self.assoc_count}"), before.vertices[start], before.vertices[stop],
                            before.segment(start, stop), after.segment(start, stop))
        graph = self._factor(before, after, face, self.tree, new_tree,
                             (redex, subtree_at(new_tree, move.position)))
        suffix = len(self.edges) - stop
        logger.debug(f"Inserted {face.name} for {move} on {self.tree}")
        self.tree = new_tree
        return ConsistentGraph(graph, replace_at(graph.shape_dom, move.position, DASH), face.name, start, suffix)

    def apply_face(self, g: BracketedGraph, name: str, position: int) -> ConsistentGraph:
        """Insert the factor of face ``name`` whose domain starts at ``position``."""
        original = g.anchored.face(name)
        dom_shape, cod_shape = g.face_shapes[name]
        k = original.domain.length
        suffix = len(self.edges) - position - k
        expected = whisker(position, dom_shape, suffix)
        if self.tree != expected:
            raise ExtensionError(f"frontier is bracketed {self.tree}, the factor of {name} needs {expected}")
        before = self.path
        source, sink = self.vertices[position], self.vertices[position + k]
        codomain = DirectedPath((source,) + original.codomain.vertices[1:-1] + (sink,), original.codomain.edges)
        for j, e in enumerate(codomain.edges):
            self.incidence[e] = (codomain.vertices[j], codomain.vertices[j + 1])
        after = before.splice(position, position + k, codomain)
        self.vertices = list(after.vertices)
        self.edges = list(after.edges)
        face = AnchoredFace(name, source, sink, before.segment(position, position + k), codomain)
        cod_tree = whisker(position, cod_shape, suffix)
        graph = self._factor(before, after, face, self.tree, cod_tree, (dom_shape, cod_shape))
        self.tree = cod_tree
        return ConsistentGraph(graph, whisker(position, DASH, suffix), name, position, suffix)


def _interface_chain(src: Bracketing, dst: Bracketing, frozen: Sequence[Tuple[int, int]]) -> List[AssocMove]:
    """Canonical chain for one interface, keeping a face segment rigid when it is a common subtree."""
    if src == dst:
        return []
    for interval in frozen:
        try:
            return chain_with_frozen_segment(src, dst, interval)
        except BracketingError:
            continue
    return associator_chain(src, dst)


def interface_bracketings(g: BracketedGraph, p: PastingSchemePresentation) -> List[Bracketing]:
    """Bracketing of each interface before its move chain: dom_G, then each face's whiskered codomain."""
    trees = [g.shape_dom]
    for i, name in enumerate(p.face_order):
        face = g.anchored.face(name)
        position = p.position(i)
        suffix = p.frontiers[i].length - position - face.domain.length
        trees.append(whisker(position, g.face_shapes[name][1], suffix))
    return trees


def canonical_interface_chains(g: BracketedGraph, p: PastingSchemePresentation) -> List[List[AssocMove]]:
    """Moves needed before each face factor and after the last one."""
    chains: List[List[AssocMove]] = []
    tree = g.shape_dom
    previous: Optional[Tuple[int, int]] = None
    for i, name in enumerate(p.face_order):
        face = g.anchored.face(name)
        dom_shape, cod_shape = g.face_shapes[name]
        position = p.position(i)
        k, k_cod = face.domain.length, face.codomain.length
        width = p.frontiers[i].length
        target = whisker(position, dom_shape, width - position - k)
        frozen = [(position, position + k)] + ([previous] if previous else [])
        chains.append(_interface_chain(tree, target, frozen))
        tree = whisker(position, cod_shape, width - position - k)
        previous = (position, position + k_cod)
    chains.append(_interface_chain(tree, g.shape_cod, [previous] if previous else []))
    return chains


def build_extension(g: BracketedGraph, p: PastingSchemePresentation,
                    chains: Sequence[Sequence[AssocMove]], strategy: str = "canonical") -> ExtensionCertificate:
    """Realize per-interface move chains as a composition scheme over g.

    Raises:
        ExtensionError: if p does not present g, or a chain does not end at
            the bracketing the next factor needs
    """
    if p.graph != g.anchored:
        raise ExtensionError("presentation does not present the graph being extended")
    if len(chains) != len(p.face_order) + 1:
        raise ExtensionError(f"expected {len(p.face_order) + 1} interface chains, got {len(chains)}")

    state = _Frontier(g.anchored.domain, g.shape_dom, g.anchored.graph.incidence, g.anchored.identifiers())
    factors: List[ConsistentGraph] = []
    assoc_indices: List[int] = []
    for i, chain in enumerate(chains):
        for move in chain:
            assoc_indices.append(len(factors))
            factors.append(state.associate(move))
        if i < len(p.face_order):
            factors.append(state.apply_face(g, p.face_order[i], p.position(i)))
    if state.tree != g.shape_cod:
        raise ExtensionError(f"final interface is bracketed {state.tree}, the codomain is {g.shape_cod}")

    scheme = compose_scheme(factors)
    logger.debug(
        f"Extension ({strategy}) with {len(factors)} factors, {len(assoc_indices)} associativity graphs"
    )
    return ExtensionCertificate(
        scheme=scheme,
        assoc_indices=tuple(assoc_indices),
        face_order=tuple(p.face_order),
        chains=tuple(tuple(c) for c in chains),
        strategy=strategy,
    )


def extend_to_composition_scheme(g: BracketedGraph, p: PastingSchemePresentation) -> ExtensionCertificate:
    """The canonical composition scheme extension of g along p."""
    return build_extension(g, p, canonical_interface_chains(g, p))


def collapse_all(h: BracketedGraph, graphs: Sequence[AssociativityGraph]) -> BracketedGraph:
    return reduce(collapse, graphs, h)


def verify_extension(cert: ExtensionCertificate, g: BracketedGraph) -> bool:
    """Replay the collapses of cert and compare the result with g."""
    factors = cert.scheme.factors
    indices = cert.assoc_indices
    if len(set(indices)) != len(indices) or any(not 0 <= i < len(factors) for i in indices):
        logger.debug("Certificate indices are out of range or repeated")
        return False
    if len(indices) >= len(factors):
        logger.debug("Associativity graphs are not a proper subsequence")
        return False
    for i, factor in enumerate(factors):
        if not isinstance(check_consistent(factor.graph), ConsistentGraph):
            logger.debug(f"Factor {i} is not consistent")
            return False
    try:
        collapsed = collapse_all(cert.scheme.graph, cert.associativity_graphs())
    except (ExtensionError, CollapseError) as e:
        logger.debug(f"Collapse failed: {e}")
        return False
    if collapsed.shape_dom != g.shape_dom or collapsed.shape_cod != g.shape_cod:
        return False
    return bracketed_equal(collapsed, g)

def origin_maps(scheme: CompositionScheme, indices: Sequence[int]) -> Tuple[Dict[str, str], Dict[str, str]]:
    """Where each vertex and edge of the scheme lands once the associativity graphs at ``indices`` are collapsed."""
    vertex_parent: Dict[str, str] = {}
    edge_parent: Dict[str, str] = {}
    for a in associativity_factors(scheme, indices):
        face = a.consistent.face_record
        edge_parent.update(zip(face.codomain.edges, face.domain.edges))
        vertex_parent.update(zip(face.codomain.vertices[1:-1], face.domain.vertices[1:-1]))

    def root(parent: Dict[str, str], name: str) -> str:
        while name in parent:
            name = parent[name]
        return name

    graph = scheme.graph.anchored.graph
    return ({v: root(vertex_parent, v) for v in graph.vertices},
            {e: root(edge_parent, e) for e in graph.incidence})


def underlying_presentation(cert: ExtensionCertificate) -> PastingSchemePresentation:
    """Collapse the associativity graphs and present the result by the remaining factors."""
    collapsed = collapse_all(cert.scheme.graph, cert.associativity_graphs())
    skip = set(cert.assoc_indices)
    order = [f.face for i, f in enumerate(cert.scheme.factors) if i not in skip]
    return presentation_from_order(collapsed.anchored, order)


def associator_scheme(path: DirectedPath, start: Bracketing, moves: Sequence[AssocMove]) -> CompositionScheme:
    """The scheme made solely of associativity graphs realizing ``moves``."""
    if not moves:
        raise ExtensionError("an associator scheme needs at least one move")
    incidence = {e: (path.vertices[i], path.vertices[i + 1]) for i, e in enumerate(path.edges)}
    state = _Frontier(path, start, incidence, set(path.vertices) | set(path.edges) | {EXTERIOR})
    return compose_scheme([state.associate(m) for m in moves])
