"""Parser for .paste documents, assignment files and bracketing text."""
import logging
from functools import lru_cache
from pathlib import Path
from typing import List, Optional, Tuple

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken, VisitError

from pasting_engine.errors import PasteSemanticError, PasteSyntaxError
from pasting_engine.format.document import (
    Arrow,
    CellAssignment,
    DiagramDocument,
    EdgeDecl,
    FaceDecl,
    GlobalDecl,
    Leg,
    MatrixValue,
    ModelBlock,
    ObjectAssignment,
    ObjectDecl,
    PathSpec,
)
from pasting_engine.graphs.bracketing import DASH, EMPTY, Bracketing, Node

logger = logging.getLogger(__name__)

GRAMMAR_PATH = Path(__file__).with_name("grammar.lark")

# A parsed path before names are checked: its tree and its leaves (None for a dash)
_Tree = Tuple[Bracketing, Tuple[Optional[str], ...]]


@lru_cache(maxsize=None)
def get_parser() -> Lark:
    return Lark(
        GRAMMAR_PATH.read_text(encoding="utf-8"),
        parser="lalr",
        start=["document", "assignments", "bracketing"],
        propagate_positions=True,
        maybe_placeholders=True,
    )


class _PasteTransformer(Transformer):
    """Builds document values bottom-up; rejects ambiguous groupings."""

    def INT(self, token: Token) -> int:
        return int(token)

    # Paths

    def leaf(self, children) -> _Tree:
        return DASH, (str(children[0]),)

    def dash(self, children) -> _Tree:
        return DASH, (None,)

    def group(self, children) -> _Tree:
        return children[0]

    @v_args(meta=True)
    def path(self, meta, children: List[_Tree]) -> _Tree:
        if len(children) == 1:
            return children[0]
        if len(children) > 2:
            raise PasteSyntaxError(
                f"ambiguous grouping of {len(children)} items; parenthesize so that every group has two",
                meta.line, meta.column,
            )
        (left, left_leaves), (right, right_leaves) = children
        return Node(left, right), left_leaves + right_leaves

    def bracketing(self, children) -> _Tree:
        return children[0]

    # Diagram statements

    @staticmethod
    def _spec(tree: _Tree, meta, what: str) -> PathSpec:
        shape, leaves = tree
        if None in leaves:
            raise PasteSemanticError(f"{what} contains a dash where an edge name is expected",
                                     meta.line, meta.column)
        return PathSpec(tuple(leaves), shape)

    @v_args(meta=True)
    def object_decl(self, meta, children) -> List[ObjectDecl]:
        return [ObjectDecl(str(name), name.line, name.column) for name in children]

    @v_args(meta=True)
    def edge_decl(self, meta, children) -> EdgeDecl:
        name, tail, head = (str(c) for c in children)
        return EdgeDecl(name, tail, head, meta.line, meta.column)

    @v_args(meta=True)
    def face_decl(self, meta, children) -> FaceDecl:
        name, dom, cod = children
        return FaceDecl(str(name), self._spec(dom, meta, f"domain of {name}"),
                        self._spec(cod, meta, f"codomain of {name}"), meta.line, meta.column)

    @v_args(meta=True)
    def global_decl(self, meta, children) -> GlobalDecl:
        source, sink, dom, cod = children
        return GlobalDecl(str(source), str(sink), self._spec(dom, meta, "global domain"),
                          self._spec(cod, meta, "global codomain"), meta.line, meta.column)

    @v_args(meta=True)
    def document(self, meta, children) -> DiagramDocument:
        name, statements = str(children[0]), children[1:]
        objects, edges, faces, models = [], [], [], []
        global_decl = None
        for statement in statements:
            if isinstance(statement, list):
                objects.extend(statement)
            elif isinstance(statement, EdgeDecl):
                edges.append(statement)
            elif isinstance(statement, FaceDecl):
                faces.append(statement)
            elif isinstance(statement, ModelBlock):
                models.append(statement)
            elif global_decl is not None:
                raise PasteSemanticError("second global declaration", statement.line, statement.column)
            else:
                global_decl = statement
        return DiagramDocument(name, tuple(objects), tuple(edges), tuple(faces), global_decl, tuple(models))

    # Assignments

    def atom(self, children) -> str:
        return str(children[0])

    def pair(self, children) -> tuple:
        return children[0], children[1]

    def element(self, children):
        return children[0]

    def leg(self, children) -> Leg:
        return Leg(*children)

    def arrow(self, children) -> Arrow:
        return Arrow(*children)

    def braced(self, children) -> tuple:
        return tuple(c for c in children if c is not None)

    def row(self, children) -> Tuple[int, ...]:
        return tuple(c for c in children if c is not None)

    def matrix(self, children) -> MatrixValue:
        return MatrixValue(tuple(c for c in children if c is not None))

    @v_args(meta=True)
    def span_object(self, meta, children) -> ObjectAssignment:
        return ObjectAssignment(str(children[0]), children[1], meta.line, meta.column)

    @v_args(meta=True)
    def span_cell(self, meta, children) -> CellAssignment:
        return CellAssignment(str(children[0]), children[1], meta.line, meta.column)

    @v_args(meta=True)
    def matrix_cell(self, meta, children) -> CellAssignment:
        return CellAssignment(str(children[0]), children[1], meta.line, meta.column)

    @v_args(meta=True)
    def span_block(self, meta, children) -> ModelBlock:
        objects = tuple(c for c in children if isinstance(c, ObjectAssignment))
        cells = tuple(c for c in children if isinstance(c, CellAssignment))
        return ModelBlock("span", objects, cells, meta.line, meta.column)

    @v_args(meta=True)
    def matrix_block(self, meta, children) -> ModelBlock:
        return ModelBlock("matrix", (), tuple(children), meta.line, meta.column)

    def assignments(self, children) -> Tuple[ModelBlock, ...]:
        return tuple(children)


def _unmatched_parenthesis(text: str) -> Optional[Tuple[int, int, str]]:
    """First parenthesis without a partner, as (line, column, char); statements never span lines."""
    for line_no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        opened: List[int] = []
        for col, ch in enumerate(line, 1):
            if ch == "(":
                opened.append(col)
            elif ch == ")":
                if not opened:
                    return line_no, col, ")"
                opened.pop()
        if opened:
            return line_no, opened[-1], "("
    return None


def _syntax_error(text: str, e: UnexpectedInput) -> PasteSyntaxError:
    unmatched = _unmatched_parenthesis(text)
    if unmatched:
        line, column, ch = unmatched
        return PasteSyntaxError(f"unmatched {ch!r}", line, column)
    if isinstance(e, UnexpectedCharacters):
        return PasteSyntaxError(f"unexpected character {text[e.pos_in_stream]!r}", e.line, e.column)
    if isinstance(e, UnexpectedToken) and e.token.type != "$END":
        expected = ", ".join(sorted(e.expected))
        shown = "end of line" if e.token.type == "_NL" else repr(str(e.token))
        return PasteSyntaxError(f"unexpected {shown}, expected one of: {expected}", e.line, e.column)
    lines = text.splitlines() or [""]
    return PasteSyntaxError("unexpected end of input", len(lines), len(lines[-1]) + 1)


def _parse(text: str, start: str):
    try:
        tree = get_parser().parse(text, start=start)
    except (UnexpectedToken, UnexpectedCharacters, UnexpectedEOF) as e:
        error = _syntax_error(text, e)
        logger.debug(f"Parse error: {error}")
        raise error from None
    try:
        return _PasteTransformer().transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, PasteSyntaxError):
            raise e.orig_exc from None
        raise


def _terminated(text: str) -> str:
    return text if text.endswith("\n") else text + "\n"


def parse_document(text: str) -> DiagramDocument:
    """Parse a .paste document.

    Raises:
        PasteSyntaxError: with the line and column of the first problem
    """
    doc = _parse(_terminated(text), "document")
    logger.debug(f"Parsed diagram {doc.name}: {len(doc.edges)} edges, {len(doc.faces)} faces")
    return doc


def parse_assignments(text: str) -> Tuple[ModelBlock, ...]:
    """Parse a file of model blocks."""
    return _parse(_terminated(text), "assignments")


def parse_bracketing(text: str) -> Bracketing:
    """A bracketing from text such as ``(- -) -`` or ``(f1 f2) f3``."""
    text = text.strip()
    if not text:
        return EMPTY
    shape, _ = _parse(text, "bracketing")
    return shape
