"""Bracketings of paths as binary trees, associativity moves and associator chains.

Addresses are strings over {"L", "R"} naming the route from the root;
the root itself is "". The leaves of a tree are numbered left to right
from 0, and a leaf interval (start, stop) is half-open.
"""
import logging
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import ClassVar, Iterator, List, Optional, Sequence, Tuple

from pasting_engine.config.settings import MAX_BRACKETING_LENGTH
from pasting_engine.errors import BracketingError
from pasting_engine.graphs.anchored import DirectedPath

logger = logging.getLogger(__name__)


class Bracketing:
    """Common interface of Dash, Node and Empty."""
    length: int

    def render(self, labels: Optional[Sequence[str]] = None) -> str:
        """Text form with the outermost parentheses omitted.

        Leaves print as dashes, or as ``labels`` in order when given.
        """
        if labels is not None and len(labels) != self.length:
            raise BracketingError(f"{len(labels)} labels for a bracketing of length {self.length}")
        if self.length == 0:
            return ""
        leaves = iter(labels if labels is not None else ["-"] * self.length)
        separator = " " if labels is not None else ""

        def go(tree: "Bracketing", top: bool) -> str:
            if isinstance(tree, Dash):
                return next(leaves)
            text = go(tree.left, False) + separator + go(tree.right, False)
            return text if top else f"({text})"

        return go(self, True)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Dash(Bracketing):
    length: ClassVar[int] = 1


@dataclass(frozen=True)
class Empty(Bracketing):
    length: ClassVar[int] = 0


@dataclass(frozen=True)
class Node(Bracketing):
    left: Bracketing
    right: Bracketing
    length: int = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        if self.left.length < 1 or self.right.length < 1:
            raise BracketingError("the empty bracketing cannot be a tree node")
        object.__setattr__(self, "length", self.left.length + self.right.length)


DASH = Dash()
EMPTY = Empty()


class Direction(Enum):
    LEFT_TO_RIGHT = "LeftToRight"  # (xy)z -> x(yz)
    RIGHT_TO_LEFT = "RightToLeft"  # x(yz) -> (xy)z

    @property
    def inverse(self) -> "Direction":
        if self is Direction.LEFT_TO_RIGHT:
            return Direction.RIGHT_TO_LEFT
        return Direction.LEFT_TO_RIGHT


@dataclass(frozen=True)
class AssocMove:
    """One re-association at the node ``position``."""
    position: str
    direction: Direction

    def inverse(self) -> "AssocMove":
        return AssocMove(self.position, self.direction.inverse)

    def __str__(self) -> str:
        return f"{self.direction.value}@{self.position or 'root'}"


@dataclass(frozen=True)
class BracketedPath:
    """A non-trivial directed path together with a bracketing of its edges."""
    path: DirectedPath
    shape: Bracketing

    def __post_init__(self):
        if self.path.length < 1:
            raise BracketingError("a bracketed path needs at least one edge")
        if self.shape.length != self.path.length:
            raise BracketingError(
                f"shape of length {self.shape.length} does not fit a path of length {self.path.length}"
            )

    @property
    def edges(self) -> Tuple[str, ...]:
        return self.path.edges

    def render(self) -> str:
        return self.shape.render(self.path.edges)

    def __str__(self) -> str:
        return self.render()


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _check_length(n: int) -> None:
    if n < 0 or n > MAX_BRACKETING_LENGTH:
        raise BracketingError(f"bracketing length must lie in 0..{MAX_BRACKETING_LENGTH}, got {n}")


@lru_cache(maxsize=None)
def _all_bracketings(n: int) -> Tuple[Bracketing, ...]:
    if n == 0:
        return (EMPTY,)
    if n == 1:
        return (DASH,)
    result = []
    for k in range(1, n):
        for left in _all_bracketings(k):
            for right in _all_bracketings(n - k):
                result.append(Node(left, right))
    return tuple(result)


def enumerate_bracketings(n: int) -> List[Bracketing]:
    """All bracketings of length n, ordered by the size of the left subtree."""
    _check_length(n)
    return list(_all_bracketings(n))


def left_normalized(n: int) -> Bracketing:
    """((--)-)...- with n leaves."""
    if n < 1:
        raise BracketingError(f"left-normalized bracketing needs n >= 1, got {n}")
    tree: Bracketing = DASH
    for _ in range(n - 1):
        tree = Node(tree, DASH)
    return tree


def right_normalized(n: int) -> Bracketing:
    if n < 1:
        raise BracketingError(f"right-normalized bracketing needs n >= 1, got {n}")
    tree: Bracketing = DASH
    for _ in range(n - 1):
        tree = Node(DASH, tree)
    return tree


def random_bracketing(rng: random.Random, n: int) -> Bracketing:
    """Uniform choice among the bracketings of length n."""
    return rng.choice(enumerate_bracketings(n))


def whisker(prefix: int, inner: Bracketing, suffix: int) -> Bracketing:
    """((P)(inner))(P') with left-normalized P and P'; empty sides are dropped."""
    tree = inner
    if prefix:
        tree = Node(left_normalized(prefix), tree)
    if suffix:
        tree = Node(tree, left_normalized(suffix))
    return tree


def subtree_at(b: Bracketing, address: str) -> Bracketing:
    node = b
    for step in address:
        if not isinstance(node, Node):
            raise BracketingError(f"address {address!r} leaves the tree {b}")
        if step == "L":
            node = node.left
        elif step == "R":
            node = node.right
        else:
            raise BracketingError(f"invalid address step {step!r}")
    return node


def replace_at(b: Bracketing, address: str, new: Bracketing) -> Bracketing:
    if not address:
        return new
    if not isinstance(b, Node):
        raise BracketingError(f"address {address!r} leaves the tree {b}")
    if address[0] == "L":
        return Node(replace_at(b.left, address[1:], new), b.right)
    if address[0] == "R":
        return Node(b.left, replace_at(b.right, address[1:], new))
    raise BracketingError(f"invalid address step {address[0]!r}")


def leaf_interval(b: Bracketing, address: str) -> Tuple[int, int]:
    """Leaves covered by the subtree at ``address``."""
    node, start = b, 0
    for step in address:
        if not isinstance(node, Node):
            raise BracketingError(f"address {address!r} leaves the tree {b}")
        if step == "L":
            node = node.left
        else:
            start += node.left.length
            node = node.right
    return start, start + node.length


def _descend(b: Bracketing, start: int, stop: int) -> Tuple[str, bool]:
    """Deepest address whose subtree contains the interval, and whether it is exact."""
    if not 0 <= start < stop <= b.length:
        raise BracketingError(f"interval ({start}, {stop}) is outside a bracketing of length {b.length}")
    node, offset, address = b, 0, ""
    while True:
        if (offset, offset + node.length) == (start, stop):
            return address, True
        if not isinstance(node, Node):
            return address, False
        middle = offset + node.left.length
        if stop <= middle:
            node, address = node.left, address + "L"
        elif start >= middle:
            node, offset, address = node.right, middle, address + "R"
        else:
            return address, False


def address_of_interval(b: Bracketing, start: int, stop: int) -> Optional[str]:
    """Address of the subtree spanning exactly leaves [start, stop), if any."""
    address, exact = _descend(b, start, stop)
    return address if exact else None


def covering_address(b: Bracketing, start: int, stop: int) -> str:
    """Address of the smallest subtree containing leaves [start, stop)."""
    return _descend(b, start, stop)[0]


def substitute_leaf(b: Bracketing, slot: int, inner: Bracketing) -> Bracketing:
    """Replace the leaf numbered ``slot`` by ``inner``."""
    address = address_of_interval(b, slot, slot + 1)
    return replace_at(b, address, inner)


def nodes(b: Bracketing, address: str = "") -> Iterator[Tuple[str, Bracketing]]:
    """Pre-order walk over (address, subtree) pairs."""
    yield address, b
    if isinstance(b, Node):
        yield from nodes(b.left, address + "L")
        yield from nodes(b.right, address + "R")


def first_difference(a: Bracketing, b: Bracketing, address: str = "") -> Optional[str]:
    """Pre-order first address where the two trees differ."""
    if a == b:
        return None
    if isinstance(a, Node) and isinstance(b, Node):
        if a.left.length == b.left.length:
            return first_difference(a.left, b.left, address + "L") or first_difference(a.right, b.right, address + "R")
    return address


def redexes(b: Bracketing) -> List[AssocMove]:
    """Every move that applies to b."""
    moves = []
    for address, node in nodes(b):
        if isinstance(node, Node):
            if isinstance(node.left, Node):
                moves.append(AssocMove(address, Direction.LEFT_TO_RIGHT))
            if isinstance(node.right, Node):
                moves.append(AssocMove(address, Direction.RIGHT_TO_LEFT))
    return moves


def rotate(node: Bracketing, direction: Direction) -> Bracketing:
    """Re-associate a single redex."""
    if direction is Direction.LEFT_TO_RIGHT:
        if not (isinstance(node, Node) and isinstance(node.left, Node)):
            raise BracketingError(f"{node} is not of the form (xy)z")
        return Node(node.left.left, Node(node.left.right, node.right))
    if not (isinstance(node, Node) and isinstance(node.right, Node)):
        raise BracketingError(f"{node} is not of the form x(yz)")
    return Node(Node(node.left, node.right.left), node.right.right)


def apply_move(b: Bracketing, m: AssocMove) -> Bracketing:
    try:
        redex = subtree_at(b, m.position)
        return replace_at(b, m.position, rotate(redex, m.direction))
    except BracketingError as e:
        raise BracketingError(f"move {m} does not apply to {b}: {e}") from e


def apply_moves(b: Bracketing, moves: Sequence[AssocMove]) -> Bracketing:
    for m in moves:
        b = apply_move(b, m)
    return b


def _left_normalizing_moves(b: Bracketing) -> List[AssocMove]:
    """RightToLeft moves taking b to left-normalized form.

    At a node E1 E2 with E2 = E21 E22 the node is rewritten to (E1 E21) E22
    until its right child is a leaf; then the left child is processed.
    """
    moves: List[AssocMove] = []
    tree, address = b, ""
    while isinstance(tree, Node):
        while isinstance(tree.right, Node):
            moves.append(AssocMove(address, Direction.RIGHT_TO_LEFT))
            tree = rotate(tree, Direction.RIGHT_TO_LEFT)
        tree, address = tree.left, address + "L"
    return moves


def associator_chain(src: Bracketing, dst: Bracketing) -> List[AssocMove]:
    """Moves from ``src`` to ``dst`` routed through the left-normalized form."""
    if src.length != dst.length:
        raise BracketingError(f"cannot connect bracketings of lengths {src.length} and {dst.length}")
    if src == dst:
        return []
    forward = _left_normalizing_moves(src)
    backward = _left_normalizing_moves(dst)
    chain = forward + [m.inverse() for m in reversed(backward)]
    logger.debug(f"Associator chain {src} -> {dst}: {len(chain)} moves")
    return chain


def chain_with_frozen_segment(src: Bracketing, dst: Bracketing, frozen: Tuple[int, int]) -> List[AssocMove]:
    """Associator chain that treats the leaf interval ``frozen`` as one leaf.

    Addresses are unchanged by re-expansion because the frozen subtree
    replaces a leaf, and no move can address inside a leaf.
    """
    if src.length != dst.length:
        raise BracketingError(f"cannot connect bracketings of lengths {src.length} and {dst.length}")
    start, stop = frozen
    src_address = address_of_interval(src, start, stop)
    dst_address = address_of_interval(dst, start, stop)
    if src_address is None or dst_address is None:
        raise BracketingError(f"frozen interval ({start}, {stop}) is not a single subtree in both bracketings")
    if subtree_at(src, src_address) != subtree_at(dst, dst_address):
        raise BracketingError(f"frozen interval ({start}, {stop}) is bracketed differently in the two trees")
    return associator_chain(replace_at(src, src_address, DASH), replace_at(dst, dst_address, DASH))


def frozen_addresses(src: Bracketing, moves: Sequence[AssocMove], frozen: Tuple[int, int]) -> List[str]:
    """Address of the frozen subtree before each move of the chain."""
    addresses = []
    tree = src
    for m in moves:
        addresses.append(address_of_interval(tree, *frozen))
        tree = apply_move(tree, m)
    return addresses
