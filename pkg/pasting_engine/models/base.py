"""The contract every bicategory model implements.

Horizontal composition follows the gf convention: ``horizontal_compose_1(g, f)``
is f followed by g, and ``horizontal_compose_2(beta, alpha)`` whiskers in the
same order. ``vertical_compose(beta, alpha)`` is alpha followed by beta.
"""
import logging
import random
from abc import ABC, abstractmethod
from typing import Any, Optional, Tuple

from pasting_engine.errors import ModelError

logger = logging.getLogger(__name__)


class BicategoryModel(ABC):
    """Executable bicategory with decidable 2-cell equality and random sampling."""

    name: str = "abstract"

    # Structure

    @abstractmethod
    def identity_1(self, x: Any) -> Any:
        """The identity 1-cell 1_X."""

    @abstractmethod
    def identity_2(self, f: Any) -> Any:
        """The identity 2-cell 1_f."""

    @abstractmethod
    def horizontal_compose_1(self, g: Any, f: Any) -> Any:
        """gf for f: X -> Y and g: Y -> Z."""

    @abstractmethod
    def horizontal_compose_2(self, beta: Any, alpha: Any) -> Any:
        """beta * alpha : gf -> g'f' for alpha: f -> f' and beta: g -> g'."""

    @abstractmethod
    def vertical_compose(self, beta: Any, alpha: Any) -> Any:
        """beta . alpha for alpha: f -> g and beta: g -> h."""

    @abstractmethod
    def associator(self, f: Any, g: Any, h: Any) -> Any:
        """a : (hg)f -> h(gf)."""

    @abstractmethod
    def associator_inverse(self, f: Any, g: Any, h: Any) -> Any:
        """a^-1 : h(gf) -> (hg)f."""

    @abstractmethod
    def left_unitor(self, f: Any) -> Any:
        """l_f : 1_Y f -> f."""

    @abstractmethod
    def left_unitor_inverse(self, f: Any) -> Any:
        ...

    @abstractmethod
    def right_unitor(self, f: Any) -> Any:
        """r_f : f 1_X -> f."""

    @abstractmethod
    def right_unitor_inverse(self, f: Any) -> Any:
        ...

    @abstractmethod
    def equal_2(self, alpha: Any, beta: Any) -> bool:
        """On-the-nose equality of 2-cells, endpoints included."""

    # Endpoints

    @abstractmethod
    def one_source(self, f: Any) -> Any:
        ...

    @abstractmethod
    def one_target(self, f: Any) -> Any:
        ...

    @abstractmethod
    def two_source(self, alpha: Any) -> Any:
        ...

    @abstractmethod
    def two_target(self, alpha: Any) -> Any:
        ...

    def equal_1(self, f: Any, g: Any) -> bool:
        return f == g

    # Sampling

    @abstractmethod
    def random_object(self, rng: random.Random, max_size: int, label: str = "x") -> Any:
        ...

    @abstractmethod
    def random_one_cell(self, rng: random.Random, x: Any, y: Any, max_size: int, label: str = "e") -> Any:
        ...

    @abstractmethod
    def random_two_cell(self, rng: random.Random, f: Any, g: Any) -> Optional[Any]:
        """A random 2-cell f -> g, or None when hom(f, g) is empty."""

    @abstractmethod
    def random_two_cell_from(self, rng: random.Random, f: Any, max_size: int, label: str = "e") -> Tuple[Any, Any]:
        """A random 1-cell g parallel to f together with a 2-cell f -> g."""

    # Rendering

    @abstractmethod
    def render_1(self, f: Any) -> str:
        ...

    @abstractmethod
    def render_2(self, alpha: Any) -> str:
        ...

    @abstractmethod
    def payload_2(self, alpha: Any) -> Any:
        """JSON-ready description of a 2-cell."""

    # Derived operations

    def require_composable_1(self, g: Any, f: Any) -> None:
        if self.one_target(f) != self.one_source(g):
            raise ModelError(
                f"cannot compose 1-cells: {self.render_1(f)} ends at {self.one_target(f)!s}, "
                f"{self.render_1(g)} starts at {self.one_source(g)!s}"
            )

    def require_composable_2(self, beta: Any, alpha: Any) -> None:
        if not self.equal_1(self.two_target(alpha), self.two_source(beta)):
            raise ModelError(
                f"cannot compose 2-cells vertically: target {self.render_1(self.two_target(alpha))} "
                f"differs from source {self.render_1(self.two_source(beta))}"
            )

    def vertical_compose_all(self, cells) -> Any:
        """alpha_n ... alpha_1 for cells listed in the order they are applied."""
        cells = list(cells)
        if not cells:
            raise ModelError("cannot compose an empty list of 2-cells")
        result = cells[0]
        for alpha in cells[1:]:
            result = self.vertical_compose(alpha, result)
        return result

    def __repr__(self) -> str:
        return f"{type(self).__name__}()"
