import pytest

from pasting_engine.errors import AssignmentError, PasteSemanticError, PasteSyntaxError
from pasting_engine.evaluation.diagram import compose
from pasting_engine.format.document import PathSpec, render_document
from pasting_engine.format.loader import load_diagram, load_document, select_block
from pasting_engine.format.parser import parse_assignments, parse_document
from pasting_engine.graphs import catalog
from pasting_engine.graphs.anchored import validate_anchored
from pasting_engine.graphs.bracketed import bracketed_equal, extend_to_composition_scheme
from pasting_engine.graphs.catalog import PAIR
from pasting_engine.graphs.presentation import find_presentation
from pasting_engine.orchestration.generator import random_pasting_diagram
from pasting_engine.orchestration.runner import encode_diagram, make_model
from pasting_engine.types import GeneratorConfig
from tests.conftest import sample_text

HEADER = "diagram small\nobject A B C\nedge x : A -> B\nedge y : A -> B\nedge z : B -> C\n"
GLOBAL = "global source = A ; sink = C ; dom = x z ; cod = y z\n"


def _small(face="face alpha : dom = x ; cod = y\n", global_line=GLOBAL):
    return HEADER + face + global_line


def _composite(d):
    cert = extend_to_composition_scheme(d.shape, find_presentation(d.shape.anchored))
    return compose(d, cert).value


class TestParseDocument:
    def test_running_sample(self, running_document):
        doc = running_document.document
        assert doc.name == "running"
        assert [o.name for o in doc.objects] == ["V", "S", "U", "W", "T"]
        assert len(doc.edges) == 7
        theta2 = doc.faces[1]
        assert theta2.name == "theta2"
        assert theta2.dom == PathSpec(("h2", "f2"), PAIR)
        assert doc.global_decl.source == "V"
        assert doc.models == ()

    def test_positions_are_recorded(self, running_document):
        edge = running_document.document.edges[0]
        assert edge.name == "h1"
        assert edge.line == 7

    def test_loaded_graph_is_the_running_example(self, running_document):
        assert bracketed_equal(running_document.graph, catalog.running_example())

    @pytest.mark.parametrize("name", ["running.paste", "side_by_side.paste", "empty_faces.paste"])
    def test_printed_document_reparses_to_itself(self, name):
        doc = parse_document(sample_text(name))
        assert parse_document(render_document(doc)) == doc

    def test_embedded_model_block(self):
        doc = parse_document(sample_text("side_by_side.paste"))
        block = doc.model("matrix")
        assert block is not None
        assert [c.name for c in block.cells][-2:] == ["alpha", "beta"]
        assert doc.model("span") is None

    def test_explicit_bracketing(self):
        text = _small(global_line="global source = A ; sink = C ; dom = (x z) ; cod = y z\n")
        assert parse_document(text).global_decl.dom.shape == PAIR


class TestSyntaxErrors:
    def test_unexpected_character(self):
        with pytest.raises(PasteSyntaxError) as info:
            parse_document("diagram x\nobject A $\n")
        assert (info.value.line, info.value.column) == (2, 10)
        assert str(info.value).startswith("line 2, column 10:")

    def test_unmatched_parenthesis(self):
        with pytest.raises(PasteSyntaxError, match="unmatched"):
            parse_document(_small(face="face alpha : dom = (x ; cod = y\n"))

    def test_three_items_without_parentheses(self):
        text = HEADER + "face alpha : dom = x z x ; cod = y\n" + GLOBAL
        with pytest.raises(PasteSyntaxError, match="ambiguous") as info:
            parse_document(text)
        assert info.value.line == 6

    def test_dash_in_a_document_path(self):
        with pytest.raises(PasteSemanticError, match="dash"):
            parse_document(_small(face="face alpha : dom = - ; cod = y\n"))

    def test_second_global_declaration(self):
        with pytest.raises(PasteSemanticError, match="second global"):
            parse_document(_small() + GLOBAL)


class TestSemanticErrors:
    def test_undeclared_edge(self):
        with pytest.raises(PasteSemanticError, match="undeclared edge w") as info:
            load_document(_small(face="face alpha : dom = x ; cod = w\n"))
        assert info.value.line == 6

    def test_undeclared_object(self):
        with pytest.raises(PasteSemanticError, match="undeclared object D"):
            load_document(HEADER + "edge q : C -> D\n" + GLOBAL)

    def test_duplicate_name(self):
        with pytest.raises(PasteSemanticError, match="clashes"):
            load_document(HEADER + "face x : dom = x ; cod = y\n" + GLOBAL)

    def test_reserved_face_name(self):
        with pytest.raises(PasteSemanticError, match="reserved"):
            load_document(_small(face="face ext : dom = x ; cod = y\n"))

    def test_missing_global(self):
        with pytest.raises(PasteSemanticError, match="missing global") as info:
            load_document(HEADER)
        assert (info.value.line, info.value.column) == (1, 1)

    def test_global_endpoints_must_match_the_paths(self):
        with pytest.raises(PasteSemanticError, match="runs A -> C, not B -> C"):
            load_document(_small(global_line="global source = B ; sink = C ; dom = x z ; cod = y z\n"))

    def test_broken_path_is_left_to_validation(self):
        loaded = load_document(sample_text("reversed_edge.paste"))
        report = validate_anchored(loaded.graph.anchored)
        assert any("not a directed path" in message for message in report.messages())


class TestAssignments:
    def test_span_block_loads(self, running_span):
        assert running_span.is_complete
        assert len(running_span.vertices["T"]) == 2

    def test_missing_block(self, running_document):
        with pytest.raises(AssignmentError, match="no model span block"):
            select_block(running_document.document, "span")

    def test_unknown_cell(self, running_document):
        (block,) = parse_assignments("model matrix\n  cell nowhere = 1\nend\n")
        with pytest.raises(AssignmentError, match="unknown edge or face nowhere"):
            load_diagram(running_document.graph, block)

    def test_matrix_of_the_wrong_size(self, running_document):
        text = sample_text("running_matrix.paste").replace("cell theta1 = [[1, 2]]", "cell theta1 = [[1]]")
        (block,) = parse_assignments(text)
        with pytest.raises(AssignmentError, match="theta1 must be a 1 x 2 matrix"):
            load_diagram(running_document.graph, block)

    def test_span_vertex_without_object(self, running_document):
        text = sample_text("running_span.paste").replace("  object T = {t1, t2}\n", "")
        (block,) = parse_assignments(text)
        with pytest.raises(AssignmentError, match="no object assigned to vertex T"):
            load_diagram(running_document.graph, block)

    def test_span_cell_that_does_not_commute(self, running_document):
        text = sample_text("running_span.paste").replace("a2 -> (p2, q)", "a2 -> (p1, q)")
        (block,) = parse_assignments(text)
        with pytest.raises(AssignmentError, match="theta1"):
            load_diagram(running_document.graph, block)

    def test_missing_edge_cell(self, running_document):
        text = sample_text("running_matrix.paste").replace("  cell g2 = 1\n", "")
        (block,) = parse_assignments(text)
        with pytest.raises(AssignmentError, match="g2"):
            load_diagram(running_document.graph, block)


class TestReplayEncoding:
    @pytest.mark.parametrize("seed", [3, 17, 29])
    @pytest.mark.parametrize("kind", ["span", "matrix"])
    def test_encoded_diagram_replays_to_the_same_composite(self, kind, seed):
        cfg = GeneratorConfig(seed=seed, max_faces=3, max_path_len=4, max_object_size=2, trials=1)
        d, _ = random_pasting_diagram(cfg, make_model(kind), seed)
        loaded = load_document(encode_diagram(d))
        replayed = load_diagram(loaded.graph, select_block(loaded.document, kind), make_model(kind))
        assert bracketed_equal(loaded.graph, d.shape)
        assert d.model.equal_2(_composite(replayed), _composite(d))
