import random

import pytest

from pasting_engine.errors import AssignmentError, BracketingError, ExtendabilityError, ExtensionError
from pasting_engine.evaluation.diagram import (
    PastingDiagram,
    canonical_extension_face,
    compose,
    eval_path,
    extend_diagram,
)
from pasting_engine.graphs import catalog
from pasting_engine.graphs.bracketed import extend_to_composition_scheme, origin_maps
from pasting_engine.graphs.bracketing import AssocMove, Direction, left_normalized, right_normalized
from pasting_engine.graphs.anchored import DirectedPath
from pasting_engine.graphs.presentation import find_presentation
from pasting_engine.models.matrices import StrictMatrixModel
from pasting_engine.models.spans import SpanModel
from pasting_engine.orchestration.certificates import alternate_certificate, available_certificates
from pasting_engine.orchestration.checks import check_maclane_instance, check_uniqueness, shortest_chain
from pasting_engine.orchestration.generator import random_pasting_diagram
from pasting_engine.types import GeneratorConfig

RUNNING_SPAN_COMPOSITE = [
    ["(a1, b1)", "(c1, d1)"],
    ["(a1, b2)", "(c1, d2)"],
    ["(a2, b1)", "(c2, d1)"],
    ["(a2, b2)", "(c2, d2)"],
]


def _certificate(d, strategy="canonical", seed=0):
    p = find_presentation(d.shape.anchored)
    return alternate_certificate(d.shape, p, strategy, random.Random(seed))


class TestRunningComposite:
    def test_span_composite(self, running_span):
        result = compose(running_span, _certificate(running_span))
        assert running_span.model.payload_2(result.value) == RUNNING_SPAN_COMPOSITE

    def test_trace_in_application_order(self, running_span):
        result = compose(running_span, _certificate(running_span))
        assert [c.label for c in result.trace] == [
            "theta1 * 1_f2", "a⁻¹", "1_h1 * theta2", "a", "theta3 * 1_g2",
        ]
        assert [c.kind for c in result.trace] == ["face", "a⁻¹", "face", "a", "face"]

    def test_matrix_composite(self, running_matrix):
        result = compose(running_matrix, _certificate(running_matrix))
        assert (result.value.source, result.value.target) == (3, 3)
        assert result.value.rows() == [[1, 3, 0], [0, 0, 1], [0, 1, 1]]

    def test_redundant_pair_gives_the_same_span_composite(self, running_span):
        result = compose(running_span, _certificate(running_span, "redundant-pair", seed=3))
        assert result.certificate.strategy == "redundant-pair"
        assert running_span.model.payload_2(result.value) == RUNNING_SPAN_COMPOSITE

    def test_uniqueness_over_available_certificates(self, running_span):
        p = find_presentation(running_span.shape.anchored)
        certs = available_certificates(running_span.shape, p, random.Random(5))
        assert [c.strategy for c in certs] == ["canonical", "redundant-pair"]
        verdict = check_uniqueness(running_span, certs)
        assert verdict.ok
        assert verdict.compared == 2

    def test_path_evaluation(self, running_span):
        dom = eval_path(running_span, running_span.shape.dom)
        assert dom.apex == (("a1", "b1"), ("a1", "b2"), ("a2", "b1"), ("a2", "b2"))


class TestCompositeErrors:
    def test_missing_face_cell(self, running_span):
        partial = running_span.with_faces({k: v for k, v in running_span.faces.items() if k != "theta2"})
        assert not partial.is_complete
        with pytest.raises(AssignmentError, match="theta2"):
            compose(partial, _certificate(running_span))

    def test_certificate_of_another_graph(self, running_matrix):
        other = catalog.side_by_side()
        cert = extend_to_composition_scheme(other, find_presentation(other.anchored))
        with pytest.raises(ExtensionError):
            compose(running_matrix, cert)

    def test_paired_edges_with_different_cells(self, running_matrix):
        cert = _certificate(running_matrix)
        a = cert.associativity_graphs()[0]
        vertex_origin, edge_origin = origin_maps(cert.scheme, cert.assoc_indices)
        edges = {e: running_matrix.edges[o] for e, o in edge_origin.items()}
        e, e_prime = a.pairs()[0]
        edges[e_prime] = edges[e] + 1
        skeleton = PastingDiagram(cert.scheme.graph, running_matrix.model,
                                  {v: running_matrix.vertices[o] for v, o in vertex_origin.items()}, edges)
        with pytest.raises(ExtendabilityError) as info:
            canonical_extension_face(skeleton, a)
        assert info.value.pair == (e, e_prime)

    def test_extended_diagram_carries_associator_components(self, running_span):
        cert = _certificate(running_span)
        extended = extend_diagram(running_span, cert)
        model = running_span.model
        for a in cert.associativity_graphs():
            cell = extended.faces[a.face]
            assert model.equal_1(model.two_source(cell), eval_path(extended, extended.shape.face_dom(a.face)))
            assert model.equal_1(model.two_target(cell), eval_path(extended, extended.shape.face_cod(a.face)))

    def test_mismatched_face_cell_is_rejected(self, running_matrix):
        faces = dict(running_matrix.faces)
        faces["theta1"] = running_matrix.model.cell(1, 1, [[1]])
        with pytest.raises(AssignmentError):
            running_matrix.with_faces(faces)


class TestSideBySide:
    def test_horizontal_composite_without_associators(self, matrix_model):
        g = catalog.side_by_side()
        edges = {"a1": 1, "a2": 1, "b1": 1, "b2": 1}
        faces = {"alpha": matrix_model.cell(1, 1, [[2]]), "beta": matrix_model.cell(1, 1, [[3]])}
        d = PastingDiagram(g, matrix_model, {v: "*" for v in g.anchored.graph.vertices}, edges, faces)
        p = find_presentation(g.anchored)
        certs = available_certificates(g, p, random.Random(0))
        assert [c.strategy for c in certs] == ["canonical", "reordered"]
        assert compose(d, certs[0]).value.rows() == [[2, 0], [0, 3]]
        assert check_uniqueness(d, certs).ok


class TestMacLaneInstances:
    def _skeleton(self, model, n, seed=11):
        rng = random.Random(seed)
        vertices = tuple(f"p{k}" for k in range(n + 1))
        path = DirectedPath(vertices, tuple(f"x{k + 1}" for k in range(n)))
        objects = {v: model.random_object(rng, 2, label=f"{v}_") for v in vertices}
        cells = {
            e: model.random_one_cell(rng, objects[vertices[k]], objects[vertices[k + 1]], 2, label=f"{e}_")
            for k, e in enumerate(path.edges)
        }
        return path, objects, cells

    def test_two_chains_between_normal_forms_agree(self, span_model):
        path, objects, cells = self._skeleton(span_model, 4)
        src, dst = left_normalized(4), right_normalized(4)
        chains = [[AssocMove("", Direction.LEFT_TO_RIGHT)] * 2, shortest_chain(src, dst),
                  [AssocMove("L", Direction.LEFT_TO_RIGHT), AssocMove("", Direction.LEFT_TO_RIGHT),
                   AssocMove("R", Direction.LEFT_TO_RIGHT)]]
        verdict = check_maclane_instance(span_model, path, objects, cells, src, dst, chains)
        assert verdict.ok, verdict.message
        assert verdict.compared == 3

    def test_empty_chain_is_the_identity(self, span_model):
        path, objects, cells = self._skeleton(span_model, 3)
        b = left_normalized(3)
        assert check_maclane_instance(span_model, path, objects, cells, b, b, [[]]).ok

    def test_chain_must_reach_its_target(self, span_model):
        path, objects, cells = self._skeleton(span_model, 3)
        with pytest.raises(BracketingError):
            check_maclane_instance(span_model, path, objects, cells, left_normalized(3), right_normalized(3), [[]])


class TestGeneratedUniqueness:
    @pytest.mark.parametrize("seed", [1, 2, 3, 4, 5, 6])
    @pytest.mark.parametrize("model", [SpanModel(), StrictMatrixModel()], ids=["span", "matrix"])
    def test_every_certificate_gives_the_same_composite(self, model, seed):
        cfg = GeneratorConfig(seed=seed, max_faces=4, max_path_len=4, max_object_size=2, trials=1)
        d, p = random_pasting_diagram(cfg, model, seed)
        certs = available_certificates(d.shape, p, random.Random(seed))
        verdict = check_uniqueness(d, certs)
        assert verdict.ok, verdict.message
