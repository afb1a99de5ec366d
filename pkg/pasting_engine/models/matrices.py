"""A strict bicategory with one object: natural numbers and matrices.

1-cells are natural numbers composed by addition. A 2-cell m -> n is an
m x n matrix over the natural numbers (or the boolean semiring); vertical
composition is the matrix product, taken in diagram order, and horizontal
composition is the block-diagonal direct sum with the first-applied cell in
the upper-left block. Associators and unitors are identity matrices.
"""
import logging
import random
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from pasting_engine.errors import ModelError
from pasting_engine.models.base import BicategoryModel

logger = logging.getLogger(__name__)

STAR = "*"
SEMIRINGS = ("natural", "boolean")
_INT64_MAX = np.iinfo(np.int64).max


@dataclass(frozen=True, eq=False)
class MatrixCell:
    """An m x n matrix tagged with its source m and target n."""
    source: int
    target: int
    matrix: np.ndarray

    def __post_init__(self):
        matrix = np.array(self.matrix, dtype=np.int64).reshape(self.source, self.target)
        if (matrix < 0).any():
            raise ModelError("matrix entries must be natural numbers")
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixCell):
            return NotImplemented
        return (self.source, self.target) == (other.source, other.target) and np.array_equal(self.matrix, other.matrix)

    __hash__ = None

    def rows(self) -> List[List[int]]:
        return self.matrix.tolist()

    def __str__(self) -> str:
        if self.source == 0 or self.target == 0:
            return f"[] ({self.source}x{self.target})"
        return "\n".join(" ".join(str(v) for v in row) for row in self.rows())


def block_diagonal(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    rows = first.shape[0] + second.shape[0]
    cols = first.shape[1] + second.shape[1]
    result = np.zeros((rows, cols), dtype=np.int64)
    result[:first.shape[0], :first.shape[1]] = first
    result[first.shape[0]:, first.shape[1]:] = second
    return result


class StrictMatrixModel(BicategoryModel):
    """Delooped matrices; every coherence cell is an identity."""

    name = "matrix"

    def __init__(self, semiring: str = "natural", max_entry: int = 3):
        if semiring not in SEMIRINGS:
            raise ModelError(f"unknown semiring {semiring!r}, expected one of {', '.join(SEMIRINGS)}")
        self.semiring = semiring
        self.max_entry = 1 if semiring == "boolean" else max_entry

    def cell(self, source: int, target: int, rows) -> MatrixCell:
        matrix = np.asarray(rows, dtype=np.int64).reshape(source, target)
        if self.semiring == "boolean" and (matrix > 1).any():
            raise ModelError("boolean matrices have entries 0 and 1")
        return MatrixCell(source, target, matrix)

    def _product(self, first: np.ndarray, second: np.ndarray) -> np.ndarray:
        if first.shape[1] == 0:
            return np.zeros((first.shape[0], second.shape[1]), dtype=np.int64)
        exact = first.astype(object) @ second.astype(object)
        if self.semiring == "boolean":
            return (exact > 0).astype(np.int64)
        if exact.size and max(exact.flat) > _INT64_MAX:
            raise ModelError("matrix product overflows 64-bit integers")
        return exact.astype(np.int64)

    def identity_1(self, x: str) -> int:
        return 0

    def identity_2(self, f: int) -> MatrixCell:
        return MatrixCell(f, f, np.eye(f, dtype=np.int64))

    def horizontal_compose_1(self, g: int, f: int) -> int:
        return f + g

    def horizontal_compose_2(self, beta: MatrixCell, alpha: MatrixCell) -> MatrixCell:
        return MatrixCell(alpha.source + beta.source, alpha.target + beta.target,
                          block_diagonal(alpha.matrix, beta.matrix))

    def vertical_compose(self, beta: MatrixCell, alpha: MatrixCell) -> MatrixCell:
        self.require_composable_2(beta, alpha)
        return MatrixCell(alpha.source, beta.target, self._product(alpha.matrix, beta.matrix))

    def associator(self, f: int, g: int, h: int) -> MatrixCell:
        return self.identity_2(f + g + h)

    def associator_inverse(self, f: int, g: int, h: int) -> MatrixCell:
        return self.identity_2(f + g + h)

    def left_unitor(self, f: int) -> MatrixCell:
        return self.identity_2(f)

    def left_unitor_inverse(self, f: int) -> MatrixCell:
        return self.identity_2(f)

    def right_unitor(self, f: int) -> MatrixCell:
        return self.identity_2(f)

    def right_unitor_inverse(self, f: int) -> MatrixCell:
        return self.identity_2(f)

    def equal_2(self, alpha: MatrixCell, beta: MatrixCell) -> bool:
        return alpha == beta

    def one_source(self, f: int) -> str:
        return STAR

    def one_target(self, f: int) -> str:
        return STAR

    def two_source(self, alpha: MatrixCell) -> int:
        return alpha.source

    def two_target(self, alpha: MatrixCell) -> int:
        return alpha.target

    def _random_matrix(self, rng: random.Random, source: int, target: int) -> MatrixCell:
        generator = np.random.default_rng(rng.getrandbits(64))
        return MatrixCell(source, target, generator.integers(0, self.max_entry + 1, size=(source, target)))

    def random_object(self, rng: random.Random, max_size: int, label: str = "x") -> str:
        return STAR

    def random_one_cell(self, rng: random.Random, x: str, y: str, max_size: int, label: str = "e") -> int:
        return rng.randint(1, max_size)

    def random_two_cell(self, rng: random.Random, f: int, g: int) -> Optional[MatrixCell]:
        return self._random_matrix(rng, f, g)

    def random_two_cell_from(self, rng: random.Random, f: int, max_size: int,
                             label: str = "e") -> Tuple[int, MatrixCell]:
        g = rng.randint(1, max_size)
        return g, self._random_matrix(rng, f, g)

    def render_1(self, f: int) -> str:
        return str(f)

    def render_2(self, alpha: MatrixCell) -> str:
        return str(alpha)

    def payload_2(self, alpha: MatrixCell) -> dict:
        return {"source": alpha.source, "target": alpha.target, "rows": alpha.rows()}

    def __repr__(self) -> str:
        return f"StrictMatrixModel(semiring={self.semiring!r})"
