import math
from fractions import Fraction
from typing import Any, Iterator, Sequence, Tuple, Union

import numpy as np

from app.core.algebra.base import TraceModel
from app.core.algebra.exceptions import InvalidTrace

# Exact nonnegative rationals stand in for ℝ≥0: the cancellation laws are
# equalities, which floating point cannot honour.
NonNegRat = Fraction


def parse_rat(value: Union[str, int, Fraction]) -> Fraction:
    try:
        result = Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as e:
        raise InvalidTrace("rat", f"cannot read {value!r} as a rational: {e}") from e
    return result


def nonneg_rat(value: Union[str, int, Fraction]) -> NonNegRat:
    result = parse_rat(value)
    if result < 0:
        raise InvalidTrace("rat", f"{result} is negative")
    return result


def format_rat(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class RationalModel(TraceModel[Fraction]):
    """Nonnegative rationals under addition: the durations model."""

    name = "rat"

    def __init__(
        self,
        grid_step: Fraction = Fraction(1, 2),
        max_numerator: int = 12,
        denominators: Sequence[int] = (1, 2, 3, 4, 6),
    ):
        if grid_step <= 0:
            raise InvalidTrace(self.name, f"grid step must be positive, got {grid_step}")
        self.grid_step = Fraction(grid_step)
        self.max_numerator = max_numerator
        self.denominators: Tuple[int, ...] = tuple(denominators)

    def concat(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def empty(self) -> Fraction:
        return Fraction(0)

    def prefix(self, x: Fraction, y: Fraction) -> bool:
        return x <= y

    def subtract(self, y: Fraction, x: Fraction) -> Fraction:
        return y - x if x <= y else Fraction(0)

    def generate(self, rng: np.random.Generator) -> Fraction:
        numerator = int(rng.integers(0, self.max_numerator + 1))
        denominator = int(rng.choice(self.denominators))
        return Fraction(numerator, denominator)

    def shrink(self, x: Fraction) -> Iterator[Fraction]:
        if x == 0:
            return
        yield Fraction(0)
        floor = Fraction(math.floor(x))
        if floor != x:
            yield floor
        if x >= 1:
            yield x - 1
        yield x / 2

    def enumerate(self, bound: int) -> Iterator[Fraction]:
        """The grid {0, step, 2·step, …, bound·step}."""
        for k in range(bound + 1):
            yield k * self.grid_step

    def size(self, x: Fraction) -> Any:
        return (x, x.denominator)

    def is_trace(self, value: Any) -> bool:
        return isinstance(value, Fraction)

    def validate(self, x: Fraction) -> bool:
        return isinstance(x, Fraction) and x >= 0

    def to_json(self, x: Fraction) -> Any:
        return format_rat(x)

    def from_json(self, data: Any) -> Fraction:
        if isinstance(data, bool) or not isinstance(data, (str, int)):
            raise InvalidTrace(self.name, f"expected a \"p/q\" string, got {data!r}")
        return nonneg_rat(data)
