"""Randomized checks of the bicategory laws in a model."""
import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, List, Sequence, Tuple

from pasting_engine.errors import ModelError
from pasting_engine.models.base import BicategoryModel

logger = logging.getLogger(__name__)

LAWS = (
    "hom_associativity",
    "hom_identity",
    "identity_interchange",
    "middle_four",
    "unity",
    "pentagon",
    "associator_naturality",
    "left_unitor_naturality",
    "right_unitor_naturality",
    "invertibility",
)


@dataclass(frozen=True)
class AxiomSample:
    """Composable cells for one round of every law.

    ``chain`` is f, g, h, k with f: W -> X, g: X -> Y, h: Y -> Z, k: Z -> V.
    ``f_cells`` are three successive 2-cells starting at f, ``g_cells``
    two starting at g and ``h_cells`` one starting at h.
    """
    chain: Tuple[Any, Any, Any, Any]
    f_cells: Tuple[Any, Any, Any]
    g_cells: Tuple[Any, Any]
    h_cells: Tuple[Any]


@dataclass
class AxiomReport:
    """Pass and fail counts per law."""
    passed: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def checked(self) -> int:
        return sum(self.passed.values()) + sum(self.failed.values())

    def record(self, law: str, holds: bool, index: int) -> None:
        if holds:
            self.passed[law] += 1
        else:
            self.failed[law] += 1
            self.failures.append(f"sample {index}: {law} fails")


def random_samples(m: BicategoryModel, rng: random.Random, count: int, max_size: int) -> List[AxiomSample]:
    samples = []
    for _ in range(count):
        objects = [m.random_object(rng, max_size, label=f"o{i}_") for i in range(5)]
        chain = tuple(
            m.random_one_cell(rng, objects[i], objects[i + 1], max_size, label=f"c{i}_") for i in range(4)
        )

        def successive(start: Any, n: int, tag: str) -> Tuple[Any, ...]:
            cells = []
            current = start
            for j in range(n):
                current, alpha = m.random_two_cell_from(rng, current, max_size, label=f"{tag}{j}_")
                cells.append(alpha)
            return tuple(cells)

        samples.append(AxiomSample(
            chain=chain,
            f_cells=successive(chain[0], 3, "f"),
            g_cells=successive(chain[1], 2, "g"),
            h_cells=successive(chain[2], 1, "h"),
        ))
    return samples


def _require_chain(m: BicategoryModel, sample: AxiomSample) -> None:
    f, g, h, k = sample.chain
    m.require_composable_1(g, f)
    m.require_composable_1(h, g)
    m.require_composable_1(k, h)
    for start, cells in ((f, sample.f_cells), (g, sample.g_cells), (h, sample.h_cells)):
        if not m.equal_1(m.two_source(cells[0]), start):
            raise ModelError("2-cells of an axiom sample must start at the chain's 1-cells")
        for first, second in zip(cells, cells[1:]):
            m.require_composable_2(second, first)


def _laws(m: BicategoryModel, sample: AxiomSample) -> List[Tuple[str, Callable[[], bool]]]:
    f, g, h, k = sample.chain
    a1, a2, a3 = sample.f_cells
    b1, b2 = sample.g_cells
    (c1,) = sample.h_cells
    hc1, hc2, vc, eq = m.horizontal_compose_1, m.horizontal_compose_2, m.vertical_compose, m.equal_2
    one = m.identity_2
    x, y = m.one_source(f), m.one_target(f)

    def pentagon() -> bool:
        kh = hc1(k, h)
        direct = vc(m.associator(hc1(g, f), h, k), m.associator(f, g, kh))
        around = vc(hc2(one(k), m.associator(f, g, h)),
                    vc(m.associator(f, hc1(h, g), k), hc2(m.associator(g, h, k), one(f))))
        return eq(direct, around)

    def invertibility() -> bool:
        hgf = (hc1(hc1(h, g), f), hc1(h, hc1(g, f)))
        return (
            eq(vc(m.associator_inverse(f, g, h), m.associator(f, g, h)), one(hgf[0]))
            and eq(vc(m.associator(f, g, h), m.associator_inverse(f, g, h)), one(hgf[1]))
            and eq(vc(m.left_unitor(f), m.left_unitor_inverse(f)), one(f))
            and eq(vc(m.left_unitor_inverse(f), m.left_unitor(f)), one(hc1(m.identity_1(y), f)))
            and eq(vc(m.right_unitor(f), m.right_unitor_inverse(f)), one(f))
            and eq(vc(m.right_unitor_inverse(f), m.right_unitor(f)), one(hc1(f, m.identity_1(x))))
        )

    f1, g1, h1 = m.two_target(a1), m.two_target(b1), m.two_target(c1)
    return [
        ("hom_associativity", lambda: eq(vc(vc(a3, a2), a1), vc(a3, vc(a2, a1)))),
        ("hom_identity", lambda: eq(vc(a1, one(f)), a1) and eq(vc(one(f1), a1), a1)),
        ("identity_interchange", lambda: eq(hc2(one(g), one(f)), one(hc1(g, f)))),
        ("middle_four", lambda: eq(hc2(vc(b2, b1), vc(a2, a1)), vc(hc2(b2, a2), hc2(b1, a1)))),
        ("unity", lambda: eq(
            vc(hc2(one(g), m.left_unitor(f)), m.associator(f, m.identity_1(y), g)),
            hc2(m.right_unitor(g), one(f)),
        )),
        ("pentagon", pentagon),
        ("associator_naturality", lambda: eq(
            vc(m.associator(f1, g1, h1), hc2(hc2(c1, b1), a1)),
            vc(hc2(c1, hc2(b1, a1)), m.associator(f, g, h)),
        )),
        ("left_unitor_naturality", lambda: eq(
            vc(m.left_unitor(f1), hc2(one(m.identity_1(y)), a1)),
            vc(a1, m.left_unitor(f)),
        )),
        ("right_unitor_naturality", lambda: eq(
            vc(m.right_unitor(f1), hc2(a1, one(m.identity_1(x)))),
            vc(a1, m.right_unitor(f)),
        )),
        ("invertibility", invertibility),
    ]


def check_axioms(m: BicategoryModel, samples: Sequence[AxiomSample]) -> AxiomReport:
    """Evaluate both sides of every law on every sample.

    Raises:
        ModelError: if a sample is not composable
    """
    report = AxiomReport()
    for index, sample in enumerate(samples):
        _require_chain(m, sample)
        for law, holds in _laws(m, sample):
            report.record(law, holds(), index)
    logger.info(
        f"Axioms in {m.name}: {report.checked} checks on {len(samples)} samples, {len(report.failures)} failures"
    )
    return report
