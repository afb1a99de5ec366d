"""Semantic checks on parsed documents, and the engine values they describe."""
import logging
from dataclasses import dataclass
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple

from pasting_engine.errors import AssignmentError, ModelError, PasteSemanticError
from pasting_engine.evaluation.diagram import PastingDiagram, eval_path
from pasting_engine.format.document import (
    Arrow,
    CellAssignment,
    DiagramDocument,
    Leg,
    MatrixValue,
    ModelBlock,
    PathSpec,
)
from pasting_engine.format.parser import parse_assignments, parse_document
from pasting_engine.graphs.anchored import EXTERIOR, build_anchored
from pasting_engine.graphs.bracketed import BracketedGraph
from pasting_engine.models.base import BicategoryModel
from pasting_engine.models.matrices import STAR, StrictMatrixModel
from pasting_engine.models.spans import FiniteSet, Span, SpanModel, SpanMorphism

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LoadedDocument:
    document: DiagramDocument
    graph: BracketedGraph


def _check_unique(kind: str, decls: Sequence[Any], taken: Dict[str, str]) -> None:
    for decl in decls:
        if decl.name in taken:
            raise PasteSemanticError(f"{kind} {decl.name} clashes with {taken[decl.name]} {decl.name}",
                                     decl.line, decl.column)
        taken[decl.name] = kind


def _endpoints(path: PathSpec, incidence: Mapping[str, Tuple[str, str]], what: str,
               line: int, column: int) -> Tuple[str, str]:
    for e in path.edges:
        if e not in incidence:
            raise PasteSemanticError(f"{what} uses undeclared edge {e}", line, column)
    return incidence[path.edges[0]][0], incidence[path.edges[-1]][1]


def load_graph(doc: DiagramDocument) -> BracketedGraph:
    """The bracketed graph a document declares.

    Only names and the declared global endpoints are checked here; paths
    that are not directed, and every other graph invariant, are left to
    validate_anchored.

    Raises:
        PasteSemanticError: on undeclared or duplicate names, or global endpoints
            that differ from those of the global paths
    """
    taken: Dict[str, str] = {}
    _check_unique("object", doc.objects, taken)
    _check_unique("edge", doc.edges, taken)
    _check_unique("face", doc.faces, taken)
    for face in doc.faces:
        if face.name == EXTERIOR:
            raise PasteSemanticError(f"face name {EXTERIOR} is reserved for the exterior", face.line, face.column)

    vertices = {o.name for o in doc.objects}
    incidence: Dict[str, Tuple[str, str]] = {}
    for edge in doc.edges:
        for v in (edge.tail, edge.head):
            if v not in vertices:
                raise PasteSemanticError(f"edge {edge.name} uses undeclared object {v}", edge.line, edge.column)
        incidence[edge.name] = (edge.tail, edge.head)

    faces = {}
    for face in doc.faces:
        _endpoints(face.dom, incidence, f"domain of {face.name}", face.line, face.column)
        _endpoints(face.cod, incidence, f"codomain of {face.name}", face.line, face.column)
        faces[face.name] = (face.dom.edges, face.cod.edges)

    g = doc.global_decl
    if g is None:
        raise PasteSemanticError("missing global declaration", 1, 1)
    for v in (g.source, g.sink):
        if v not in vertices:
            raise PasteSemanticError(f"global declaration uses undeclared object {v}", g.line, g.column)
    for what, path in (("global domain", g.dom), ("global codomain", g.cod)):
        ends = _endpoints(path, incidence, what, g.line, g.column)
        if ends != (g.source, g.sink):
            raise PasteSemanticError(
                f"{what} runs {ends[0]} -> {ends[1]}, not {g.source} -> {g.sink}", g.line, g.column
            )

    anchored = build_anchored(vertices, incidence, faces, g.dom.edges, g.cod.edges)
    shapes = {face.name: (face.dom.shape, face.cod.shape) for face in doc.faces}
    logger.debug(f"Loaded {doc.name}: {len(vertices)} objects, {len(incidence)} edges, {len(faces)} faces")
    return BracketedGraph(anchored, g.dom.shape, g.cod.shape, shapes)


def load_document(text: str) -> LoadedDocument:
    doc = parse_document(text)
    return LoadedDocument(doc, load_graph(doc))


def model_for(kind: str) -> BicategoryModel:
    if kind == "span":
        return SpanModel()
    if kind == "matrix":
        return StrictMatrixModel()
    raise AssignmentError(f"unknown model {kind!r}, expected span or matrix")


def _where(item: Any) -> str:
    return f"line {item.line}: " if getattr(item, "line", 0) else ""


def _span_cells(shape: BracketedGraph, block: ModelBlock) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    graph = shape.anchored.graph
    objects: Dict[str, FiniteSet] = {}
    for o in block.objects:
        if o.name not in graph.vertices:
            raise AssignmentError(f"{_where(o)}object assigned to unknown vertex {o.name}")
        if any(isinstance(e, (Leg, Arrow)) for e in o.elements):
            raise AssignmentError(f"{_where(o)}object {o.name} must be a set of element names")
        objects[o.name] = FiniteSet(tuple(o.elements))
    edges: Dict[str, Span] = {}
    for cell in block.cells:
        if cell.name not in graph.incidence:
            continue
        if not isinstance(cell.value, tuple) or not all(isinstance(e, Leg) for e in cell.value):
            raise AssignmentError(f"{_where(cell)}cell on edge {cell.name} must list legs 'element: x -> y'")
        tail, head = graph.incidence[cell.name]
        if tail not in objects or head not in objects:
            missing = tail if tail not in objects else head
            raise AssignmentError(f"{_where(cell)}no object assigned to vertex {missing}")
        try:
            edges[cell.name] = Span(objects[tail], objects[head], tuple((l.element, l.left, l.right) for l in cell.value))
        except ModelError as e:
            raise AssignmentError(f"{_where(cell)}cell on edge {cell.name}: {e}") from e
    return dict(objects), edges


def _matrix_cells(shape: BracketedGraph, block: ModelBlock) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    graph = shape.anchored.graph
    edges: Dict[str, int] = {}
    for cell in block.cells:
        if cell.name not in graph.incidence:
            continue
        if not isinstance(cell.value, int):
            raise AssignmentError(f"{_where(cell)}cell on edge {cell.name} must be a natural number")
        edges[cell.name] = cell.value
    return {v: STAR for v in graph.vertices}, edges


def _face_cell(d: PastingDiagram, cell: CellAssignment) -> Any:
    m = d.model
    source = eval_path(d, d.shape.face_dom(cell.name))
    target = eval_path(d, d.shape.face_cod(cell.name))
    if isinstance(m, SpanModel):
        if not isinstance(cell.value, tuple) or not all(isinstance(e, Arrow) for e in cell.value):
            raise AssignmentError(f"{_where(cell)}cell on face {cell.name} must list arrows 'x -> y'")
        try:
            return SpanMorphism(source, target, tuple((a.source, a.target) for a in cell.value))
        except ModelError as e:
            raise AssignmentError(f"{_where(cell)}cell on face {cell.name}: {e}") from e
    if not isinstance(cell.value, MatrixValue):
        raise AssignmentError(f"{_where(cell)}cell on face {cell.name} must be a matrix")
    rows = cell.value.rows
    if len(rows) != source or any(len(row) != target for row in rows):
        raise AssignmentError(
            f"{_where(cell)}cell on face {cell.name} must be a {source} x {target} matrix"
        )
    try:
        return m.cell(source, target, [list(row) for row in rows])
    except ModelError as e:
        raise AssignmentError(f"{_where(cell)}cell on face {cell.name}: {e}") from e


def load_diagram(shape: BracketedGraph, block: ModelBlock, model: Optional[BicategoryModel] = None) -> PastingDiagram:
    """The pasting diagram given by an assignment block on ``shape``.

    Raises:
        AssignmentError: if a cell is missing, unknown or does not fit its boundary
    """
    model = model or model_for(block.kind)
    anchored = shape.anchored
    known = set(anchored.graph.incidence) | set(anchored.face_names)
    seen = set()
    for cell in block.cells:
        if cell.name not in known:
            raise AssignmentError(f"{_where(cell)}cell assigned to unknown edge or face {cell.name}")
        if cell.name in seen:
            raise AssignmentError(f"{_where(cell)}second cell assigned to {cell.name}")
        seen.add(cell.name)
    if block.kind == "span":
        vertices, edges = _span_cells(shape, block)
    else:
        vertices, edges = _matrix_cells(shape, block)
    skeleton = PastingDiagram(shape, model, vertices, edges)
    faces = {cell.name: _face_cell(skeleton, cell) for cell in block.cells if anchored.has_face(cell.name)}
    logger.debug(f"Assigned {len(edges)} 1-cells and {len(faces)} 2-cells in the {block.kind} model")
    return skeleton.with_faces(faces)


def select_block(doc: DiagramDocument, kind: str, assignments_text: Optional[str] = None) -> ModelBlock:
    """The assignment block of ``kind``, from a separate assignments file when given."""
    blocks = parse_assignments(assignments_text) if assignments_text is not None else doc.models
    block = next((b for b in blocks if b.kind == kind), None)
    if block is None:
        source = "assignments file" if assignments_text is not None else f"diagram {doc.name}"
        raise AssignmentError(f"{source} has no model {kind} block")
    return block
