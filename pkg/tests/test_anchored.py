import pytest

from pasting_engine.errors import InterfaceMismatchError, UnvalidatedGraphError
from pasting_engine.graphs import catalog
from pasting_engine.graphs.anchored import (
    build_anchored,
    canonical_form,
    is_atomic,
    relabel,
    structurally_equal,
    validate_anchored,
    vertical_compose,
)
from pasting_engine.graphs.presentation import find_presentation


def _atomic_with_h4(tail, head):
    edges = {
        "f": ("s", "sF"), "h1": ("sF", "u"), "h2": ("u", "tF"),
        "h3": ("sF", "v"), "h4": (tail, head), "h5": ("w", "tF"), "g": ("tF", "t"),
    }
    return build_anchored(
        vertices=["s", "sF", "u", "tF", "v", "w", "t"],
        edges=edges,
        faces={"F": (["h1", "h2"], ["h3", "h4", "h5"])},
        domain=["f", "h1", "h2", "g"],
        codomain=["f", "h3", "h4", "h5", "g"],
    )


def _bigon(face, dom, cod, vertices=("s", "t")):
    s, t = vertices[0], vertices[-1]
    return build_anchored(vertices, {dom: (s, t), cod: (s, t)}, {face: ([dom], [cod])}, [dom], [cod])


class TestValidateAnchored:
    def test_atomic_example_is_valid(self):
        report = validate_anchored(catalog.atomic_example().anchored)
        assert report.ok
        assert report.messages() == []

    def test_euler_relation_of_atomic_example(self):
        g = catalog.atomic_example().anchored
        assert len(g.graph.vertices) - len(g.graph.incidence) + len(g.faces) + 1 == 2

    def test_parallel_edges_are_the_minimal_graph(self):
        assert validate_anchored(catalog.parallel_minimal().anchored).ok

    def test_running_example_is_valid(self, running):
        assert validate_anchored(running.anchored).ok

    def test_reversed_edge_breaks_the_codomain(self):
        report = validate_anchored(_atomic_with_h4("w", "v"))
        assert not report.ok
        assert any(v.subject == "face F" and "codomain is not a directed path" in v.message
                   for v in report.violations)

    def test_missing_face_leaves_edges_on_one_walk(self):
        g = build_anchored(
            vertices=["V", "S", "U", "W", "T"],
            edges={
                "h1": ("V", "S"), "h2": ("S", "U"), "h3": ("S", "W"),
                "f1": ("V", "U"), "f2": ("U", "T"), "g1": ("V", "W"), "g2": ("W", "T"),
            },
            faces={"theta1": (["f1"], ["h1", "h2"]), "theta3": (["h1", "h3"], ["g1"])},
            domain=["f1", "f2"],
            codomain=["g1", "g2"],
        )
        messages = validate_anchored(g).messages()
        assert "edge h2: occurs 1 times in face boundary walks, expected 2" in messages
        assert any(m.startswith("graph: Euler relation fails") for m in messages)

    def test_loop_is_reported(self):
        g = build_anchored(["s", "t"], {"x": ("s", "t"), "y": ("s", "t"), "l": ("t", "t")},
                           {"alpha": (["x"], ["y"])}, ["x"], ["y"])
        assert "edge l: is a loop" in validate_anchored(g).messages()

    def test_face_above_and_below_the_same_side_is_rejected(self):
        # beta sits on the wrong side of y: both faces lie below it
        g = build_anchored(["s", "t"], {"x": ("s", "t"), "y": ("s", "t"), "z": ("s", "t")},
                           {"alpha": (["y"], ["x"]), "beta": (["y"], ["z"])}, ["x"], ["z"])
        report = validate_anchored(g)
        assert any(v.subject == "edge y" for v in report.violations)


class TestIsAtomic:
    def test_atomic_example(self):
        g = catalog.atomic_example().anchored
        assert is_atomic(g)
        face = g.faces[0]
        assert g.domain.find(face.domain) == 1
        assert g.codomain.find(face.codomain) == 1

    def test_two_faces_are_not_atomic(self):
        assert not is_atomic(catalog.vertical_pair().anchored)

    def test_parallel_minimal(self):
        assert is_atomic(catalog.parallel_minimal().anchored)

    def test_rejects_unvalidated_input(self):
        with pytest.raises(UnvalidatedGraphError):
            is_atomic(_atomic_with_h4("w", "v"))


class TestVerticalCompose:
    def test_stacked_bigons(self):
        upper = _bigon("alpha", "x", "y")
        lower = _bigon("beta", "y", "z")
        hg = vertical_compose(upper, lower)
        assert validate_anchored(hg).ok
        assert hg.face_names == ("alpha", "beta")
        assert hg.domain == upper.domain
        assert hg.codomain == lower.codomain
        assert structurally_equal(hg, catalog.vertical_pair().anchored, match_face_names=True)

    def test_clashing_face_names_are_renamed(self):
        upper = _bigon("alpha", "x", "y")
        lower = _bigon("alpha", "y", "z")
        assert vertical_compose(upper, lower).face_names == ("alpha", "alpha_2")

    def test_associativity(self, running, running_presentation):
        a, b, c = running_presentation.factors
        left = vertical_compose(vertical_compose(a, b), c)
        right = vertical_compose(a, vertical_compose(b, c))
        assert structurally_equal(left, right, match_face_names=True)
        assert structurally_equal(left, running.anchored, match_face_names=True)

    def test_interface_mismatch_reports_position(self, running_presentation):
        first, _, third = running_presentation.factors
        with pytest.raises(InterfaceMismatchError) as info:
            vertical_compose(first, third)
        assert info.value.position == 1


class TestCanonicalForm:
    def test_renaming_does_not_change_the_form(self, running):
        g = running.anchored
        vertex_map = {v: f"x_{v}" for v in g.graph.vertices}
        edge_map = {e: f"y_{e}" for e in g.graph.incidence}
        renamed = relabel(g, vertex_map, edge_map)
        assert canonical_form(renamed) == canonical_form(g)
        assert structurally_equal(renamed, g, match_face_names=True)

    def test_different_graphs_differ(self):
        assert not structurally_equal(catalog.side_by_side().anchored, catalog.vertical_pair().anchored)

    def test_presentation_factors_follow_the_greedy_order(self, running):
        assert find_presentation(running.anchored).face_order == ("theta1", "theta2", "theta3")
