import random

import numpy as np
import pytest

from pasting_engine.errors import ModelError
from pasting_engine.models.axioms import LAWS, check_axioms, random_samples
from pasting_engine.models.matrices import MatrixCell, StrictMatrixModel, block_diagonal
from pasting_engine.models.spans import FiniteSet, Span, SpanModel, SpanMorphism, span_compose

X = FiniteSet(("x",))
Y = FiniteSet(("y1", "y2"))
Z = FiniteSet(("z",))
W = FiniteSet(("w",))


@pytest.fixture
def chain():
    f = Span(X, Y, (("a", "x", "y1"), ("b", "x", "y2")))
    g = Span(Y, Z, (("c", "y1", "z"), ("d", "y2", "z")))
    h = Span(Z, W, (("e", "z", "w"),))
    return f, g, h


class TestFiniteSpans:
    def test_elements_are_kept_in_canonical_order(self):
        assert FiniteSet(("b", ("a", "c"), "a")).elements == ("a", "b", ("a", "c"))

    def test_composite_is_the_pullback(self, chain):
        f, g, _ = chain
        gf = span_compose(f, g)
        assert gf.apex == (("a", "c"), ("b", "d"))
        assert gf.left(("a", "c")) == "x"
        assert gf.right(("b", "d")) == "z"

    def test_associator_renests_pairs(self, span_model, chain):
        f, g, h = chain
        a = span_model.associator(f, g, h)
        assert a(("a", ("c", "e"))) == (("a", "c"), "e")
        assert span_model.equal_2(
            span_model.vertical_compose(span_model.associator_inverse(f, g, h), a),
            span_model.identity_2(a.source),
        )

    def test_unitors(self, span_model, chain):
        f, _, _ = chain
        lam = span_model.left_unitor(f)
        assert lam(("a", "y1")) == "a"
        assert span_model.equal_2(span_model.vertical_compose(span_model.left_unitor_inverse(f), lam),
                                  span_model.identity_2(lam.source))

    def test_leg_with_unknown_target(self):
        with pytest.raises(ModelError, match="right leg"):
            Span(X, Y, (("a", "x", "nowhere"),))

    def test_duplicate_apex_element(self):
        with pytest.raises(ModelError, match="listed twice"):
            Span(X, Y, (("a", "x", "y1"), ("a", "x", "y2")))

    def test_morphism_must_commute_with_legs(self, chain):
        f, _, _ = chain
        with pytest.raises(ModelError, match="does not commute"):
            SpanMorphism(f, f, (("a", "b"), ("b", "a")))

    def test_morphism_must_be_total(self, chain):
        f, _, _ = chain
        with pytest.raises(ModelError, match="not defined exactly"):
            SpanMorphism(f, f, (("a", "a"),))

    def test_payload_renders_nested_labels(self, span_model, chain):
        f, g, h = chain
        payload = span_model.payload_2(span_model.associator(f, g, h))
        assert payload[0] == ["(a, (c, e))", "((a, c), e)"]


class TestStrictMatrices:
    def test_horizontal_composite_puts_the_first_cell_upper_left(self, matrix_model):
        alpha = matrix_model.cell(1, 1, [[2]])
        beta = matrix_model.cell(1, 2, [[1, 1]])
        result = matrix_model.horizontal_compose_2(beta, alpha)
        assert (result.source, result.target) == (2, 3)
        assert result.rows() == [[2, 0, 0], [0, 1, 1]]

    def test_vertical_composite_is_the_product_in_diagram_order(self, matrix_model):
        alpha = matrix_model.cell(1, 2, [[1, 2]])
        beta = matrix_model.cell(2, 1, [[3], [4]])
        assert matrix_model.vertical_compose(beta, alpha).rows() == [[11]]

    def test_vertical_composite_needs_matching_sizes(self, matrix_model):
        alpha = matrix_model.cell(1, 2, [[1, 2]])
        with pytest.raises(ModelError):
            matrix_model.vertical_compose(alpha, alpha)

    def test_boolean_product_saturates(self):
        m = StrictMatrixModel(semiring="boolean")
        alpha = m.cell(1, 2, [[1, 1]])
        beta = m.cell(2, 1, [[1], [1]])
        assert m.vertical_compose(beta, alpha).rows() == [[1]]

    def test_boolean_entries(self):
        with pytest.raises(ModelError):
            StrictMatrixModel(semiring="boolean").cell(1, 1, [[2]])

    def test_unknown_semiring(self):
        with pytest.raises(ModelError):
            StrictMatrixModel(semiring="tropical")

    def test_negative_entries(self):
        with pytest.raises(ModelError):
            MatrixCell(1, 1, np.array([[-1]]))

    def test_empty_cells(self, matrix_model):
        assert matrix_model.identity_2(0).rows() == []
        assert block_diagonal(np.zeros((0, 0), dtype=np.int64), np.eye(1, dtype=np.int64)).tolist() == [[1]]

    def test_coherence_cells_are_identities(self, matrix_model):
        assert matrix_model.associator(1, 2, 3) == matrix_model.identity_2(6)
        assert matrix_model.horizontal_compose_1(2, 3) == 5


class _DoubledAssociator(StrictMatrixModel):
    def associator(self, f, g, h):
        return MatrixCell(f + g + h, f + g + h, 2 * np.eye(f + g + h, dtype=np.int64))


class TestAxioms:
    @pytest.mark.parametrize("model", [SpanModel(), StrictMatrixModel(), StrictMatrixModel(semiring="boolean")],
                             ids=["span", "matrix", "boolean"])
    def test_laws_hold(self, model):
        report = check_axioms(model, random_samples(model, random.Random(7), 15, 3))
        assert report.ok, report.failures[:3]
        assert report.checked == 15 * len(LAWS)

    def test_broken_associator_is_caught(self):
        model = _DoubledAssociator()
        report = check_axioms(model, random_samples(model, random.Random(7), 5, 3))
        assert not report.ok
        assert report.failed["pentagon"] == 5
        assert report.failed["invertibility"] == 5
