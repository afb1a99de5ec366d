"""Random pasting diagrams, built as stacks of random atomic graphs.

Generation by stacking guarantees that the face order used is a
presentation, so every generated graph is a pasting scheme.
"""
import logging
import random
from typing import Any, Dict, List, Optional, Tuple

from pasting_engine.config.settings import load_settings
from pasting_engine.errors import ModelError
from pasting_engine.evaluation.diagram import PastingDiagram, fold_path
from pasting_engine.graphs.anchored import build_anchored
from pasting_engine.graphs.bracketed import BracketedGraph
from pasting_engine.graphs.bracketing import Bracketing, random_bracketing
from pasting_engine.graphs.presentation import PastingSchemePresentation, presentation_from_order
from pasting_engine.models.base import BicategoryModel
from pasting_engine.models.spans import FiniteSet, Span, SpanModel
from pasting_engine.types import GeneratorConfig

logger = logging.getLogger(__name__)


class _Builder:
    """Vertices, edges and cells accumulated while stacking faces."""

    def __init__(self, cfg: GeneratorConfig, model: BicategoryModel, rng: random.Random):
        self.cfg = cfg
        self.model = model
        self.rng = rng
        self.objects: Dict[str, Any] = {}
        self.incidence: Dict[str, Tuple[str, str]] = {}
        self.one_cells: Dict[str, Any] = {}
        self.two_cells: Dict[str, Any] = {}
        self.faces: Dict[str, Tuple[List[str], List[str]]] = {}
        self.face_shapes: Dict[str, Tuple[Bracketing, Bracketing]] = {}

    def new_vertex(self) -> str:
        name = f"v{len(self.objects)}"
        self.objects[name] = self.model.random_object(self.rng, self.cfg.max_object_size, label=f"{name}_")
        return name

    def new_edge(self, tail: str, head: str) -> str:
        name = f"e{len(self.incidence) + 1}"
        self.incidence[name] = (tail, head)
        self.one_cells[name] = self.model.random_one_cell(
            self.rng, self.objects[tail], self.objects[head], self.cfg.max_object_size, label=f"{name}_"
        )
        return name

    def composite(self, edges: List[str], shape: Bracketing) -> Any:
        return fold_path(self.model, shape, [self.one_cells[e] for e in edges])

    def _covering_codomain(self, vertices: List[str], edges: List[str], needed) -> None:
        """Replace the cells on a fresh codomain so that hom(dom, cod) is non-empty."""
        lefts = sorted({x for x, _ in needed}, key=str)
        rights = sorted({y for _, y in needed}, key=str)
        for v in vertices[1:-1]:
            self.objects[v] = FiniteSet((f"{v}_0",))
        source, sink = self.objects[vertices[0]], self.objects[vertices[-1]]
        if len(edges) == 1:
            legs = tuple((f"{edges[0]}_{i}", x, y) for i, (x, y) in enumerate(sorted(needed, key=str), 1))
            self.one_cells[edges[0]] = Span(source, sink, legs)
            return
        for i, e in enumerate(edges):
            tail, head = self.objects[vertices[i]], self.objects[vertices[i + 1]]
            if i == 0:
                legs = tuple((f"{e}_{j}", x, head.elements[0]) for j, x in enumerate(lefts, 1))
            elif i == len(edges) - 1:
                legs = tuple((f"{e}_{j}", tail.elements[0], y) for j, y in enumerate(rights, 1))
            else:
                legs = ((f"{e}_1", tail.elements[0], head.elements[0]),)
            self.one_cells[e] = Span(tail, head, legs)

    def add_face(self, name: str, frontier_vertices: List[str], frontier_edges: List[str],
                 attempts: int) -> Tuple[List[str], List[str]]:
        rng, cfg = self.rng, self.cfg
        width = len(frontier_edges)
        k = rng.randint(1, width)
        start = rng.randint(0, width - k)
        room = cfg.max_path_len - (width - k)
        l = rng.randint(1, max(1, room))
        dom_edges = frontier_edges[start:start + k]
        dom_shape, cod_shape = random_bracketing(rng, k), random_bracketing(rng, l)
        source = self.composite(dom_edges, dom_shape)

        tail, head = frontier_vertices[start], frontier_vertices[start + k]
        cell = None
        for _ in range(attempts):
            cod_vertices = [tail] + [self.new_vertex() for _ in range(l - 1)] + [head]
            cod_edges = [self.new_edge(a, b) for a, b in zip(cod_vertices, cod_vertices[1:])]
            cell = self.model.random_two_cell(rng, source, self.composite(cod_edges, cod_shape))
            if cell is not None:
                break
            for v in cod_vertices[1:-1]:
                del self.objects[v]
            for e in cod_edges:
                del self.incidence[e]
                del self.one_cells[e]
        if cell is None:
            if not isinstance(self.model, SpanModel):
                raise ModelError(f"no 2-cell found for face {name} after {attempts} attempts")
            logger.debug(f"Face {name}: falling back to a covering codomain")
            cod_vertices = [tail] + [self.new_vertex() for _ in range(l - 1)] + [head]
            cod_edges = [self.new_edge(a, b) for a, b in zip(cod_vertices, cod_vertices[1:])]
            self._covering_codomain(cod_vertices, cod_edges, {(source.left(s), source.right(s)) for s in source.apex})
            cell = self.model.random_two_cell(rng, source, self.composite(cod_edges, cod_shape))

        self.faces[name] = (dom_edges, cod_edges)
        self.face_shapes[name] = (dom_shape, cod_shape)
        self.two_cells[name] = cell
        return (frontier_vertices[:start] + cod_vertices + frontier_vertices[start + k + 1:],
                frontier_edges[:start] + cod_edges + frontier_edges[start + k:])


def random_pasting_diagram(cfg: GeneratorConfig, model: BicategoryModel,
                           seed: Optional[int] = None) -> Tuple[PastingDiagram, PastingSchemePresentation]:
    """A random diagram whose faces were stacked in presentation order.

    The same (cfg, model kind, seed) always yields the same diagram.
    """
    rng = random.Random(cfg.seed if seed is None else seed)
    attempts = load_settings().span_attempts
    builder = _Builder(cfg, model, rng)

    length = rng.randint(min(3, cfg.max_path_len), cfg.max_path_len)
    vertices = [builder.new_vertex() for _ in range(length + 1)]
    edges = [builder.new_edge(a, b) for a, b in zip(vertices, vertices[1:])]
    domain = list(edges)

    order = []
    for i in range(rng.randint(1, cfg.max_faces)):
        name = f"F{i + 1}"
        vertices, edges = builder.add_face(name, vertices, edges, attempts)
        order.append(name)

    anchored = build_anchored(builder.objects.keys(), builder.incidence, builder.faces, domain, edges)
    shape = BracketedGraph(anchored, random_bracketing(rng, len(domain)), random_bracketing(rng, len(edges)),
                           builder.face_shapes)
    diagram = PastingDiagram(shape, model, dict(builder.objects), dict(builder.one_cells), dict(builder.two_cells))
    presentation = presentation_from_order(anchored, order)
    logger.debug(f"Generated {len(order)}-face diagram with {len(builder.incidence)} edges (seed {seed})")
    return diagram, presentation
