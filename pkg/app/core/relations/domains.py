"""
Finite variable domains.

Every domain is an ordered, duplicate-free tuple of values; a binding stores
the index ("code") of its value in that tuple. Trace domains additionally carry
their model and the prefix, subtraction and concatenation tables over their
values, so the healthiness conditions can work on codes alone.
"""
import itertools
import json
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Hashable, Iterable, Sequence, Tuple

import numpy as np

from app.config.settings import settings
from app.core.algebra.base import TraceModel
from app.core.relations.exceptions import DomainViolation, RelationError
from app.utils.logger import logger

log = logger("app.core.relations.domains")


def value_key(value: Any) -> Hashable:
    """Interning key that keeps booleans apart from numbers and merges int/Fraction."""
    if isinstance(value, bool):
        return ("bool", value)
    if isinstance(value, (int, Fraction)):
        return ("num", Fraction(value))
    return (type(value).__name__, value)


class Domain:
    kind = "enum"

    def __init__(self, values: Iterable[Any]):
        values = tuple(values)
        keys = [value_key(v) for v in values]
        if len(set(keys)) != len(keys):
            raise RelationError(f"Domain values must be distinct, got {values!r}")
        if not values:
            raise RelationError("Domains must be inhabited")
        self.values: Tuple[Any, ...] = values
        self._codes: Dict[Hashable, int] = {k: i for i, k in enumerate(keys)}

    @property
    def size(self) -> int:
        return len(self.values)

    def code(self, value: Any) -> int:
        """Index of `value`, or -1 when it lies outside the domain."""
        return self._codes.get(value_key(value), -1)

    def __contains__(self, value: Any) -> bool:
        return self.code(value) >= 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Domain)
            and self.kind == other.kind
            and tuple(map(value_key, self.values)) == tuple(map(value_key, other.values))
        )

    def __hash__(self) -> int:
        return hash((self.kind, tuple(map(value_key, self.values))))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({list(self.values)!r})"


class BoolDomain(Domain):
    kind = "bool"

    def __init__(self) -> None:
        super().__init__((False, True))


class EnumDomain(Domain):
    kind = "enum"


class EventDomain(Domain):
    kind = "events"


class TraceDomain(Domain):
    """A finite, subtraction-closed set of traces of one model."""

    kind = "traces"

    def __init__(self, model: TraceModel, values: Sequence[Any]):
        ordered = sorted(
            dict.fromkeys(values),
            key=lambda v: (model.size(v), json.dumps(model.to_json(v), sort_keys=True)),
        )
        if not any(model.eq(v, model.empty()) for v in ordered):
            ordered.insert(0, model.empty())
        super().__init__(ordered)
        self.model = model
        missing = np.argwhere(self.subtract_table < 0)
        if missing.size:
            y, x = missing[0]
            raise DomainViolation(
                "tr",
                f"trace universe is not subtraction-closed: {self.values[y]} − {self.values[x]} is missing",
            )

    @classmethod
    def bounded_sequences(cls, model: TraceModel, bound: int) -> "TraceDomain":
        return cls(model, list(model.enumerate(bound)))

    @classmethod
    def rational_grid(cls, model: TraceModel, step: Fraction, bound: Fraction) -> "TraceDomain":
        if step <= 0 or bound < 0:
            raise RelationError(f"Rational grids need step > 0 and bound ≥ 0, got {step}, {bound}")
        count = int(Fraction(bound) / Fraction(step))
        return cls(model, [k * Fraction(step) for k in range(count + 1)])

    @classmethod
    def subtraction_closure(cls, model: TraceModel, seeds: Iterable[Any], limit: int = 0) -> "TraceDomain":
        """Close a seed set under pairwise subtraction of prefix-related traces."""
        limit = limit or settings.TIMED_UNIVERSE_LIMIT
        seeds = list(seeds)
        universe = {model.empty()}
        universe.update(seeds)
        frontier = True
        while frontier:
            frontier = False
            for x, y in itertools.product(list(universe), repeat=2):
                if model.prefix(x, y):
                    z = model.subtract(y, x)
                    if z not in universe:
                        universe.add(z)
                        frontier = True
                        if len(universe) > limit:
                            raise DomainViolation(
                                "tr", f"subtraction closure exceeds {limit} traces"
                            )
        log.debug("subtraction closure of {} seeds has {} traces", len(seeds), len(universe))
        return cls(model, list(universe))

    def _pairwise(self, op) -> np.ndarray:
        n = self.size
        table = np.empty((n, n), dtype=np.int64)
        for i, j in itertools.product(range(n), repeat=2):
            table[i, j] = self.code(op(self.values[i], self.values[j]))
        return table

    @cached_property
    def prefix_table(self) -> np.ndarray:
        """prefix_table[i, j] is values[i] ≤ values[j]."""
        n = self.size
        table = np.zeros((n, n), dtype=bool)
        for i, j in itertools.product(range(n), repeat=2):
            table[i, j] = self.model.prefix(self.values[i], self.values[j])
        return table

    @cached_property
    def subtract_table(self) -> np.ndarray:
        """subtract_table[j, i] is the code of values[j] − values[i]."""
        return self._pairwise(self.model.subtract)

    @cached_property
    def concat_table(self) -> np.ndarray:
        """concat_table[i, j] is the code of values[i] ⌢ values[j], or -1 outside the universe."""
        return self._pairwise(self.model.concat)

    @property
    def empty_code(self) -> int:
        return self.code(self.model.empty())

    def __eq__(self, other: object) -> bool:
        return super().__eq__(other) and self.model is getattr(other, "model", None)

    def __hash__(self) -> int:
        return super().__hash__()


def domain_from_json(declaration: Any) -> Domain:
    """Read a universe-config domain: "bool" or {"enum": [...]}."""
    if declaration == "bool":
        return BoolDomain()
    if isinstance(declaration, dict) and "enum" in declaration:
        return EnumDomain(declaration["enum"])
    if isinstance(declaration, dict) and "events" in declaration:
        return EventDomain(declaration["events"])
    raise RelationError(f"Unknown domain declaration {declaration!r}; expected \"bool\" or {{\"enum\": [...]}}")
