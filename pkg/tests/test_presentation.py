import pytest
from hypothesis import given, settings, strategies as st

from pasting_engine.errors import EnumerationLimitError, PresentationError
from pasting_engine.graphs import catalog
from pasting_engine.graphs.anchored import build_anchored, canonical_form, is_atomic
from pasting_engine.graphs.presentation import (
    NotAPastingScheme,
    PastingSchemePresentation,
    enumerate_presentations,
    find_presentation,
    presentation_from_order,
)
from pasting_engine.models.matrices import StrictMatrixModel
from pasting_engine.orchestration.generator import random_pasting_diagram
from pasting_engine.types import GeneratorConfig


class TestFindPresentation:
    def test_running_example_peels_in_one_order(self, running):
        p = find_presentation(running.anchored)
        assert isinstance(p, PastingSchemePresentation)
        assert p.face_order == ("theta1", "theta2", "theta3")
        assert [f.edges for f in p.frontiers] == [
            ("f1", "f2"), ("h1", "h2", "f2"), ("h1", "h3", "g2"), ("g1", "g2"),
        ]
        assert [p.position(i) for i in range(3)] == [0, 1, 0]

    def test_factors_are_atomic_and_recompose(self, running):
        p = find_presentation(running.anchored)
        assert all(is_atomic(factor) for factor in p.factors)
        assert canonical_form(p.compose(), True) == canonical_form(running.anchored, True)

    def test_atomic_example_is_its_own_presentation(self):
        p = find_presentation(catalog.atomic_example().anchored)
        assert p.face_order == ("F",)
        assert len(p) == 1

    def test_interior_source_is_not_a_pasting_scheme(self):
        g = catalog.interior_source_obstruction()
        found = find_presentation(g)
        assert isinstance(found, NotAPastingScheme)
        assert found.unused_faces == ("Bt", "T")
        assert found.frontier == g.domain
        assert "not a pasting scheme" in found.reason

    def test_graph_without_faces_is_not_a_pasting_scheme(self):
        g = build_anchored(["s", "m", "t"], {"e1": ("s", "m"), "e2": ("m", "t")}, {},
                           ["e1", "e2"], ["e1", "e2"])
        found = find_presentation(g)
        assert isinstance(found, NotAPastingScheme)
        assert found.reason == "no interior faces: not a pasting scheme"


class TestPresentationFromOrder:
    def test_reproduces_the_greedy_order(self, running):
        p = presentation_from_order(running.anchored, ["theta1", "theta2", "theta3"])
        assert p.face_order == find_presentation(running.anchored).face_order

    def test_rejects_an_order_that_cannot_be_peeled(self, running):
        with pytest.raises(PresentationError):
            presentation_from_order(running.anchored, ["theta2", "theta1", "theta3"])

    def test_rejects_a_non_permutation(self, running):
        with pytest.raises(PresentationError):
            presentation_from_order(running.anchored, ["theta1", "theta1", "theta3"])


class TestEnumeratePresentations:
    def test_side_by_side_has_two_orders(self):
        orders = [p.face_order for p in enumerate_presentations(catalog.side_by_side().anchored)]
        assert orders == [("alpha", "beta"), ("beta", "alpha")]

    def test_running_example_has_exactly_one(self, running):
        assert len(enumerate_presentations(running.anchored)) == 1

    def test_obstruction_has_none(self):
        assert enumerate_presentations(catalog.interior_source_obstruction()) == []

    def test_limit_cannot_be_raised(self, running):
        with pytest.raises(EnumerationLimitError):
            enumerate_presentations(running.anchored, max_faces=8)

    def test_graph_over_the_limit(self, running):
        with pytest.raises(EnumerationLimitError):
            enumerate_presentations(running.anchored, max_faces=2)


class TestRecognitionOnGeneratedDiagrams:
    @settings(max_examples=25, deadline=None)
    @given(seed=st.integers(min_value=0, max_value=10_000))
    def test_greedy_and_exhaustive_agree(self, seed):
        cfg = GeneratorConfig(seed=seed, max_faces=4, max_path_len=4, trials=1)
        d, p = random_pasting_diagram(cfg, StrictMatrixModel(), seed)
        g = d.shape.anchored
        greedy = find_presentation(g)
        assert isinstance(greedy, PastingSchemePresentation)
        orders = [q.face_order for q in enumerate_presentations(g)]
        assert greedy.face_order in orders
        assert p.face_order in orders
