"""The bicategory of spans of finite sets.

A 1-cell X -> Y is an apex S with legs S -> X and S -> Y, and gf is the
pullback over the middle object, whose elements are pairs (s, t) with s
from f and t from g. Nothing is identified up to isomorphism, so
(hg)f and h(gf) have differently nested elements and the associator is
a genuine bijection between them.
"""
import logging
import random
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Hashable, Iterator, List, Optional, Tuple

from pasting_engine.errors import ModelError
from pasting_engine.models.base import BicategoryModel

logger = logging.getLogger(__name__)

Label = Hashable


def _label_key(label: Label) -> tuple:
    """Total order on nested labels: strings before pairs, pairs lexicographically."""
    if isinstance(label, tuple):
        return (1, tuple(_label_key(part) for part in label))
    return (0, str(label))


def render_label(label: Label) -> str:
    if isinstance(label, tuple):
        return "(" + ", ".join(render_label(part) for part in label) + ")"
    return str(label)


@dataclass(frozen=True)
class FiniteSet:
    """A finite set of labels, stored in canonical order."""
    elements: Tuple[Label, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(set(self.elements), key=_label_key)))

    def __contains__(self, item: Label) -> bool:
        return item in self._members

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def _members(self) -> frozenset:
        return frozenset(self.elements)

    def __str__(self) -> str:
        return "{" + ", ".join(render_label(x) for x in self.elements) + "}"


@dataclass(frozen=True)
class Span:
    """X <- S -> Y given as (element, left leg, right leg) triples."""
    source: FiniteSet
    target: FiniteSet
    legs: Tuple[Tuple[Label, Label, Label], ...]

    def __post_init__(self):
        legs = tuple(sorted(self.legs, key=lambda leg: _label_key(leg[0])))
        object.__setattr__(self, "legs", legs)
        seen = set()
        for element, left, right in legs:
            if element in seen:
                raise ModelError(f"apex element {render_label(element)} is listed twice")
            seen.add(element)
            if left not in self.source:
                raise ModelError(f"left leg of {render_label(element)} lands on {render_label(left)}, not in {self.source}")
            if right not in self.target:
                raise ModelError(f"right leg of {render_label(element)} lands on {render_label(right)}, not in {self.target}")

    @property
    def apex(self) -> Tuple[Label, ...]:
        return tuple(element for element, _, _ in self.legs)

    @cached_property
    def _legs(self) -> Dict[Label, Tuple[Label, Label]]:
        return {element: (left, right) for element, left, right in self.legs}

    def left(self, element: Label) -> Label:
        return self._legs[element][0]

    def right(self, element: Label) -> Label:
        return self._legs[element][1]

    def __len__(self) -> int:
        return len(self.legs)

    def __str__(self) -> str:
        body = ", ".join(
            f"{render_label(e)}: {render_label(x)} -> {render_label(y)}" for e, x, y in self.legs
        )
        return "{" + body + "}"


@dataclass(frozen=True)
class SpanMorphism:
    """A function between the apexes of two parallel spans, commuting with both legs."""
    source: Span
    target: Span
    mapping: Tuple[Tuple[Label, Label], ...]

    def __post_init__(self):
        mapping = tuple(sorted(self.mapping, key=lambda pair: _label_key(pair[0])))
        object.__setattr__(self, "mapping", mapping)
        if self.source.source != self.target.source or self.source.target != self.target.target:
            raise ModelError("a span morphism needs parallel spans")
        keys = [x for x, _ in mapping]
        if len(set(keys)) != len(keys):
            raise ModelError("span morphism assigns an element twice")
        if set(keys) != set(self.source.apex):
            missing = sorted(set(self.source.apex) - set(keys), key=_label_key)
            extra = sorted(set(keys) - set(self.source.apex), key=_label_key)
            raise ModelError(
                f"span morphism is not defined exactly on the source apex "
                f"(missing {[render_label(x) for x in missing]}, extra {[render_label(x) for x in extra]})"
            )
        targets = set(self.target.apex)
        for x, y in mapping:
            if y not in targets:
                raise ModelError(f"{render_label(x)} is sent to {render_label(y)}, not in the target apex")
            if self.source.left(x) != self.target.left(y) or self.source.right(x) != self.target.right(y):
                raise ModelError(f"{render_label(x)} -> {render_label(y)} does not commute with the legs")

    @cached_property
    def _table(self) -> Dict[Label, Label]:
        return dict(self.mapping)

    def __call__(self, element: Label) -> Label:
        return self._table[element]

    def __str__(self) -> str:
        return "{" + ", ".join(f"{render_label(x)} -> {render_label(y)}" for x, y in self.mapping) + "}"


def span_compose(f: Span, g: Span) -> Span:
    """gf: pairs (s, t) with right_f(s) = left_g(t)."""
    if f.target != g.source:
        raise ModelError(f"cannot compose spans: {f.target} is not {g.source}")
    legs = [
        ((s, t), f.left(s), g.right(t))
        for s in f.apex
        for t in g.apex
        if f.right(s) == g.left(t)
    ]
    return Span(f.source, g.target, tuple(legs))


def span_associator(f: Span, g: Span, h: Span) -> SpanMorphism:
    """(hg)f -> h(gf), sending (s, (t, u)) to ((s, t), u)."""
    source = span_compose(f, span_compose(g, h))
    target = span_compose(span_compose(f, g), h)
    mapping = tuple((x, ((x[0], x[1][0]), x[1][1])) for x in source.apex)
    return SpanMorphism(source, target, mapping)


def span_identity(x: FiniteSet) -> Span:
    return Span(x, x, tuple((element, element, element) for element in x))


class SpanModel(BicategoryModel):
    """Spans of finite sets, a bicategory that is not a 2-category."""

    name = "span"

    def identity_1(self, x: FiniteSet) -> Span:
        return span_identity(x)

    def identity_2(self, f: Span) -> SpanMorphism:
        return SpanMorphism(f, f, tuple((e, e) for e in f.apex))

    def horizontal_compose_1(self, g: Span, f: Span) -> Span:
        return span_compose(f, g)

    def horizontal_compose_2(self, beta: SpanMorphism, alpha: SpanMorphism) -> SpanMorphism:
        source = span_compose(alpha.source, beta.source)
        target = span_compose(alpha.target, beta.target)
        return SpanMorphism(source, target, tuple(((s, t), (alpha(s), beta(t))) for s, t in source.apex))

    def vertical_compose(self, beta: SpanMorphism, alpha: SpanMorphism) -> SpanMorphism:
        self.require_composable_2(beta, alpha)
        return SpanMorphism(alpha.source, beta.target, tuple((x, beta(alpha(x))) for x in alpha.source.apex))

    def associator(self, f: Span, g: Span, h: Span) -> SpanMorphism:
        return span_associator(f, g, h)

    def associator_inverse(self, f: Span, g: Span, h: Span) -> SpanMorphism:
        forward = span_associator(f, g, h)
        return SpanMorphism(forward.target, forward.source, tuple((y, x) for x, y in forward.mapping))

    def left_unitor(self, f: Span) -> SpanMorphism:
        source = span_compose(f, span_identity(f.target))
        return SpanMorphism(source, f, tuple((x, x[0]) for x in source.apex))

    def left_unitor_inverse(self, f: Span) -> SpanMorphism:
        target = span_compose(f, span_identity(f.target))
        return SpanMorphism(f, target, tuple((s, (s, f.right(s))) for s in f.apex))

    def right_unitor(self, f: Span) -> SpanMorphism:
        source = span_compose(span_identity(f.source), f)
        return SpanMorphism(source, f, tuple((x, x[1]) for x in source.apex))

    def right_unitor_inverse(self, f: Span) -> SpanMorphism:
        target = span_compose(span_identity(f.source), f)
        return SpanMorphism(f, target, tuple((s, (f.left(s), s)) for s in f.apex))

    def equal_2(self, alpha: SpanMorphism, beta: SpanMorphism) -> bool:
        return alpha == beta

    def one_source(self, f: Span) -> FiniteSet:
        return f.source

    def one_target(self, f: Span) -> FiniteSet:
        return f.target

    def two_source(self, alpha: SpanMorphism) -> Span:
        return alpha.source

    def two_target(self, alpha: SpanMorphism) -> Span:
        return alpha.target

    def random_object(self, rng: random.Random, max_size: int, label: str = "x") -> FiniteSet:
        return FiniteSet(tuple(f"{label}{i}" for i in range(1, rng.randint(1, max_size) + 1)))

    def random_one_cell(self, rng: random.Random, x: FiniteSet, y: FiniteSet, max_size: int,
                        label: str = "e") -> Span:
        size = rng.randint(1, max_size)
        return Span(x, y, tuple(
            (f"{label}{i}", rng.choice(x.elements), rng.choice(y.elements)) for i in range(1, size + 1)
        ))

    def random_two_cell(self, rng: random.Random, f: Span, g: Span) -> Optional[SpanMorphism]:
        """Uniform among leg-commuting functions, choosing each image independently."""
        if f.source != g.source or f.target != g.target:
            raise ModelError("random_two_cell needs parallel spans")
        mapping = []
        for x in f.apex:
            candidates = [y for y in g.apex if g.left(y) == f.left(x) and g.right(y) == f.right(x)]
            if not candidates:
                return None
            mapping.append((x, rng.choice(candidates)))
        return SpanMorphism(f, g, tuple(mapping))

    def random_two_cell_from(self, rng: random.Random, f: Span, max_size: int,
                             label: str = "e") -> Tuple[Span, SpanMorphism]:
        """Merge elements of f within leg classes, then add a few unrelated elements."""
        classes: Dict[Tuple[Label, Label], List[Label]] = {}
        for x in f.apex:
            classes.setdefault((f.left(x), f.right(x)), []).append(x)
        legs = []
        mapping = []
        counter = 0
        for (left, right), members in classes.items():
            images = []
            for _ in range(rng.randint(1, len(members))):
                counter += 1
                images.append(f"{label}{counter}")
                legs.append((images[-1], left, right))
            mapping.extend((x, rng.choice(images)) for x in members)
        for _ in range(rng.randint(0, max(0, max_size - len(legs)))):
            counter += 1
            legs.append((f"{label}{counter}", rng.choice(f.source.elements), rng.choice(f.target.elements)))
        g = Span(f.source, f.target, tuple(legs))
        return g, SpanMorphism(f, g, tuple(mapping))

    def render_1(self, f: Span) -> str:
        return str(f)

    def render_2(self, alpha: SpanMorphism) -> str:
        return "\n".join(f"{render_label(x)} -> {render_label(y)}" for x, y in alpha.mapping) or "(empty)"

    def payload_2(self, alpha: SpanMorphism) -> List[List[str]]:
        return [[render_label(x), render_label(y)] for x, y in alpha.mapping]
