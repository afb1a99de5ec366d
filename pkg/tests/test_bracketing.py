import pytest
from hypothesis import given, settings, strategies as st

from pasting_engine.errors import BracketingError, PasteSyntaxError
from pasting_engine.format.parser import parse_bracketing
from pasting_engine.graphs.bracketing import (
    DASH,
    EMPTY,
    AssocMove,
    Direction,
    Node,
    apply_move,
    apply_moves,
    associator_chain,
    catalan,
    chain_with_frozen_segment,
    enumerate_bracketings,
    frozen_addresses,
    leaf_interval,
    left_normalized,
    right_normalized,
    substitute_leaf,
    whisker,
)
from pasting_engine.graphs.catalog import PAIR
from pasting_engine.orchestration.checks import shortest_chain

L2R = Direction.LEFT_TO_RIGHT
R2L = Direction.RIGHT_TO_LEFT


@st.composite
def bracketing_pairs(draw, max_length=7):
    n = draw(st.integers(min_value=1, max_value=max_length))
    trees = enumerate_bracketings(n)
    return draw(st.sampled_from(trees)), draw(st.sampled_from(trees))


class TestEnumeration:
    @pytest.mark.parametrize("n", range(1, 11))
    def test_counts_are_catalan_numbers(self, n):
        assert len(enumerate_bracketings(n)) == catalan(n - 1)

    def test_three_leaves(self):
        assert [b.render() for b in enumerate_bracketings(3)] == ["-(--)", "(--)-"]

    def test_zero_leaves(self):
        assert enumerate_bracketings(0) == [EMPTY]

    def test_length_limit(self):
        with pytest.raises(BracketingError):
            enumerate_bracketings(13)

    def test_normal_forms(self):
        assert left_normalized(4).render() == "((--)-)-"
        assert right_normalized(4).render() == "-(-(--))"
        assert left_normalized(1) == DASH
        with pytest.raises(BracketingError):
            left_normalized(0)

    def test_render_with_labels(self):
        assert left_normalized(3).render(["h1", "h2", "f2"]) == "(h1 h2) f2"

    def test_whisker(self):
        assert whisker(1, PAIR, 1) == Node(Node(DASH, PAIR), DASH)
        assert whisker(0, DASH, 0) == DASH
        assert leaf_interval(whisker(2, PAIR, 1), "LR") == (2, 4)


class TestMoves:
    def test_left_to_right_at_root(self):
        assert apply_move(left_normalized(3), AssocMove("", L2R)) == right_normalized(3)

    def test_inverse_undoes_the_move(self):
        move = AssocMove("", L2R)
        tree = left_normalized(4)
        assert apply_moves(tree, [move, move.inverse()]) == tree

    def test_move_on_longer_tree(self):
        assert apply_move(left_normalized(4), AssocMove("", L2R)).render() == "(--)(--)"

    def test_move_that_does_not_apply(self):
        with pytest.raises(BracketingError):
            apply_move(left_normalized(3), AssocMove("", R2L))

    def test_move_str(self):
        assert str(AssocMove("LR", R2L)) == "RightToLeft@LR"
        assert str(AssocMove("", L2R)) == "LeftToRight@root"


class TestAssociatorChain:
    def test_equal_trees_need_no_moves(self):
        assert associator_chain(left_normalized(5), left_normalized(5)) == []

    def test_left_to_right_normal_form(self):
        chain = associator_chain(left_normalized(4), right_normalized(4))
        assert chain == [AssocMove("", L2R), AssocMove("", L2R)]
        assert len(chain) == len(shortest_chain(left_normalized(4), right_normalized(4)))

    def test_lengths_must_match(self):
        with pytest.raises(BracketingError):
            associator_chain(left_normalized(3), left_normalized(4))

    @settings(max_examples=60, deadline=None)
    @given(pair=bracketing_pairs())
    def test_chain_reaches_its_target(self, pair):
        src, dst = pair
        chain = associator_chain(src, dst)
        assert apply_moves(src, chain) == dst
        assert (chain == []) == (src == dst)

    @settings(max_examples=60, deadline=None)
    @given(pair=bracketing_pairs())
    def test_normalizing_uses_right_to_left_moves_only(self, pair):
        src, _ = pair
        chain = associator_chain(src, left_normalized(src.length))
        assert all(m.direction is R2L for m in chain)

    @settings(max_examples=40, deadline=None)
    @given(pair=bracketing_pairs(max_length=5))
    def test_chains_are_never_shorter_than_shortest(self, pair):
        src, dst = pair
        assert len(associator_chain(src, dst)) >= len(shortest_chain(src, dst))


class TestFrozenSegment:
    def test_single_move_with_pair_frozen(self):
        src = Node(Node(DASH, PAIR), DASH)
        dst = Node(DASH, Node(PAIR, DASH))
        chain = chain_with_frozen_segment(src, dst, (1, 3))
        assert chain == [AssocMove("", L2R)]
        assert apply_moves(src, chain) == dst

    def test_frozen_whole_tree(self):
        assert chain_with_frozen_segment(PAIR, PAIR, (0, 2)) == []

    def test_interval_straddling_subtrees(self):
        with pytest.raises(BracketingError):
            chain_with_frozen_segment(left_normalized(3), right_normalized(3), (1, 3))

    @settings(max_examples=40, deadline=None)
    @given(
        outer=bracketing_pairs(max_length=4),
        slot=st.integers(min_value=0, max_value=3),
    )
    def test_moves_never_reach_inside_the_frozen_subtree(self, outer, slot):
        b1, b2 = outer
        slot = slot % b1.length
        src, dst = substitute_leaf(b1, slot, PAIR), substitute_leaf(b2, slot, PAIR)
        frozen = (slot, slot + 2)
        chain = chain_with_frozen_segment(src, dst, frozen)
        assert apply_moves(src, chain) == dst
        for move, address in zip(chain, frozen_addresses(src, chain, frozen)):
            assert address is not None
            assert not move.position.startswith(address)


class TestParseBracketing:
    def test_dashes(self):
        assert parse_bracketing("(- -) -") == left_normalized(3)

    def test_names(self):
        assert parse_bracketing("f1 (f2 f3)") == right_normalized(3)

    def test_unicode_minus(self):
        assert parse_bracketing("−−") == PAIR

    def test_empty_text(self):
        assert parse_bracketing("   ") == EMPTY

    @pytest.mark.parametrize("n", range(1, 6))
    def test_rendered_text_reparses(self, n):
        for b in enumerate_bracketings(n):
            assert parse_bracketing(b.render()) == b

    def test_three_items_in_a_group_are_ambiguous(self):
        with pytest.raises(PasteSyntaxError, match="ambiguous"):
            parse_bracketing("- - -")

    def test_unmatched_parenthesis_position(self):
        with pytest.raises(PasteSyntaxError) as info:
            parse_bracketing("f1 (f2")
        assert (info.value.line, info.value.column) == (1, 4)
