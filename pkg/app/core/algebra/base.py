from abc import ABC, abstractmethod
from typing import Any, Generic, Iterator, TypeVar

import numpy as np

from app.core.algebra.exceptions import GeneratorError

T = TypeVar("T")


class TraceModel(ABC, Generic[T]):
    """
    A trace algebra: a cancellative monoid (carrier, concat, empty) with no inverses.

    Prefix and subtraction are part of the interface rather than derived by
    search, since the existential in their definitions is not executable over an
    infinite carrier. Each model builds them directly and the law suite checks
    them against the definitions.
    """

    name: str = "abstract"

    @abstractmethod
    def concat(self, x: T, y: T) -> T:
        ...

    @abstractmethod
    def empty(self) -> T:
        ...

    @abstractmethod
    def prefix(self, x: T, y: T) -> bool:
        """True iff some z in the carrier has y = x ⌢ z."""

    @abstractmethod
    def subtract(self, y: T, x: T) -> T:
        """The unique z with y = x ⌢ z when x is a prefix of y, otherwise empty."""

    @abstractmethod
    def generate(self, rng: np.random.Generator) -> T:
        ...

    def shrink(self, x: T) -> Iterator[T]:
        """Candidates strictly smaller than x, most aggressive first."""
        return iter(())

    def enumerate(self, bound: int) -> Iterator[T]:
        """All carrier values up to `bound`, in nondecreasing size."""
        raise GeneratorError(self.name, "model has no finite enumerator")

    def size(self, x: T) -> Any:
        return 0

    def is_trace(self, value: Any) -> bool:
        return False

    def validate(self, x: T) -> bool:
        return self.is_trace(x)

    def eq(self, x: T, y: T) -> bool:
        return x == y

    def to_json(self, x: T) -> Any:
        return x

    def from_json(self, data: Any) -> T:
        return data

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"
