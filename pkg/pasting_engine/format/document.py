"""In-memory form of .paste documents and their printer.

Positions are kept for diagnostics only; they do not take part in equality,
so a printed and reparsed document equals the original.
"""
from dataclasses import dataclass, field
from typing import Hashable, Optional, Tuple, Union

from pasting_engine.evaluation.diagram import PastingDiagram
from pasting_engine.graphs.bracketed import BracketedGraph
from pasting_engine.graphs.bracketing import Bracketing
from pasting_engine.models.matrices import MatrixCell
from pasting_engine.models.spans import FiniteSet, Span, SpanMorphism, render_label

Label = Hashable


@dataclass(frozen=True)
class PathSpec:
    """Edge names in diagram order with the bracketing written around them."""
    edges: Tuple[str, ...]
    shape: Bracketing

    def render(self) -> str:
        return self.shape.render(self.edges)


@dataclass(frozen=True)
class ObjectDecl:
    name: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class EdgeDecl:
    name: str
    tail: str
    head: str
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class FaceDecl:
    name: str
    dom: PathSpec
    cod: PathSpec
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class GlobalDecl:
    source: str
    sink: str
    dom: PathSpec
    cod: PathSpec
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class Leg:
    """``element: left -> right`` inside a span cell."""
    element: Label
    left: Label
    right: Label


@dataclass(frozen=True)
class Arrow:
    """``source -> target`` inside a span 2-cell."""
    source: Label
    target: Label


@dataclass(frozen=True)
class MatrixValue:
    """Row-major entries of a matrix cell."""
    rows: Tuple[Tuple[int, ...], ...]

    def render(self) -> str:
        return "[" + ", ".join("[" + ", ".join(str(v) for v in row) + "]" for row in self.rows) + "]"


Entry = Union[Label, Leg, Arrow]
CellValue = Union[int, MatrixValue, Tuple[Entry, ...]]


@dataclass(frozen=True)
class ObjectAssignment:
    name: str
    elements: Tuple[Entry, ...]
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class CellAssignment:
    name: str
    value: CellValue
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class ModelBlock:
    kind: str  # "span" or "matrix"
    objects: Tuple[ObjectAssignment, ...] = ()
    cells: Tuple[CellAssignment, ...] = ()
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)


@dataclass(frozen=True)
class DiagramDocument:
    name: str
    objects: Tuple[ObjectDecl, ...] = ()
    edges: Tuple[EdgeDecl, ...] = ()
    faces: Tuple[FaceDecl, ...] = ()
    global_decl: Optional[GlobalDecl] = None
    models: Tuple[ModelBlock, ...] = ()

    def model(self, kind: str) -> Optional[ModelBlock]:
        """The first embedded assignment of the given kind."""
        return next((block for block in self.models if block.kind == kind), None)


# Printing


def _render_entry(entry: Entry) -> str:
    if isinstance(entry, Leg):
        return f"{render_label(entry.element)}: {render_label(entry.left)} -> {render_label(entry.right)}"
    if isinstance(entry, Arrow):
        return f"{render_label(entry.source)} -> {render_label(entry.target)}"
    return render_label(entry)


def _render_value(value: CellValue) -> str:
    if isinstance(value, int):
        return str(value)
    if isinstance(value, MatrixValue):
        return value.render()
    return "{" + ", ".join(_render_entry(entry) for entry in value) + "}"


def render_model_block(block: ModelBlock) -> str:
    lines = [f"model {block.kind}"]
    lines += [f"  object {o.name} = {{{', '.join(_render_entry(e) for e in o.elements)}}}" for o in block.objects]
    lines += [f"  cell {c.name} = {_render_value(c.value)}" for c in block.cells]
    lines.append("end")
    return "\n".join(lines) + "\n"


def render_document(doc: DiagramDocument) -> str:
    """Normalized text of ``doc``; parsing it gives back an equal document."""
    sections = [f"diagram {doc.name}\n"]
    if doc.objects:
        sections.append("object " + " ".join(o.name for o in doc.objects) + "\n")
    if doc.edges:
        sections.append("".join(f"edge {e.name} : {e.tail} -> {e.head}\n" for e in doc.edges))
    if doc.faces:
        sections.append("".join(
            f"face {f.name} : dom = {f.dom.render()} ; cod = {f.cod.render()}\n" for f in doc.faces
        ))
    if doc.global_decl:
        g = doc.global_decl
        sections.append(
            f"global source = {g.source} ; sink = {g.sink} ; dom = {g.dom.render()} ; cod = {g.cod.render()}\n"
        )
    sections += [render_model_block(block) for block in doc.models]
    return "\n".join(sections)


# Documents from engine values


def document_from_graph(g: BracketedGraph, name: str = "diagram",
                        models: Tuple[ModelBlock, ...] = ()) -> DiagramDocument:
    a = g.anchored
    faces = tuple(
        FaceDecl(f.name, PathSpec(f.domain.edges, g.face_shapes[f.name][0]),
                 PathSpec(f.codomain.edges, g.face_shapes[f.name][1]))
        for f in a.faces
    )
    return DiagramDocument(
        name=name,
        objects=tuple(ObjectDecl(v) for v in a.graph.vertices),
        edges=tuple(EdgeDecl(e, *a.graph.incidence[e]) for e in sorted(a.graph.incidence)),
        faces=faces,
        global_decl=GlobalDecl(a.source, a.sink, PathSpec(a.domain.edges, g.shape_dom),
                               PathSpec(a.codomain.edges, g.shape_cod)),
        models=models,
    )


def _set_entries(x: FiniteSet) -> Tuple[Entry, ...]:
    return tuple(x.elements)


def model_block_from_diagram(d: PastingDiagram) -> ModelBlock:
    """The assignment block that reproduces the cells of d."""
    kind = d.model.name
    cells = []
    objects: Tuple[ObjectAssignment, ...] = ()
    if kind == "span":
        objects = tuple(ObjectAssignment(v, _set_entries(d.vertices[v])) for v in sorted(d.vertices))
        for e in sorted(d.edges):
            span: Span = d.edges[e]
            cells.append(CellAssignment(e, tuple(Leg(x, l, r) for x, l, r in span.legs)))
        for name in sorted(d.faces):
            cell: SpanMorphism = d.faces[name]
            cells.append(CellAssignment(name, tuple(Arrow(x, y) for x, y in cell.mapping)))
    else:
        cells += [CellAssignment(e, int(d.edges[e])) for e in sorted(d.edges)]
        for name in sorted(d.faces):
            matrix: MatrixCell = d.faces[name]
            cells.append(CellAssignment(name, MatrixValue(tuple(tuple(row) for row in matrix.rows()))))
    return ModelBlock(kind, objects, tuple(cells))

