from typing import Any, Callable, Dict, Iterable, Iterator, Mapping

import numpy as np
import pandas as pd

from app.core.relations.alphabet import Alphabet
from app.core.relations.exceptions import AlphabetMismatch, DomainViolation, EvaluationError, RelationError
from app.core.relations.terms import Term
from app.core.relations.types import PredicateSummary, ValueCount, VariableSummary
from app.core.relations.universe import Universe, UniverseFactory


class Predicate:
    """
    An alphabetised relation held extensionally: a boolean mask over every
    binding of its alphabet's universe. Predicates are immutable.
    """

    __slots__ = ("alphabet", "mask")

    def __init__(self, alphabet: Alphabet, mask: np.ndarray):
        mask = np.asarray(mask, dtype=bool).reshape(-1)
        if mask.shape[0] != alphabet.size:
            raise RelationError(f"Mask of {mask.shape[0]} rows does not fit {alphabet} ({alphabet.size} bindings)")
        if mask.flags.writeable:
            mask = mask.copy()
            mask.setflags(write=False)
        self.alphabet = alphabet
        self.mask = mask

    @property
    def universe(self) -> Universe:
        return UniverseFactory.get_universe(self.alphabet)

    @classmethod
    def true(cls, alphabet: Alphabet) -> "Predicate":
        return cls(alphabet, np.ones(alphabet.size, dtype=bool))

    @classmethod
    def false(cls, alphabet: Alphabet) -> "Predicate":
        return cls(alphabet, np.zeros(alphabet.size, dtype=bool))

    @classmethod
    def where(cls, alphabet: Alphabet, condition: Term) -> "Predicate":
        """Bindings on which a boolean-valued term holds."""
        universe = UniverseFactory.get_universe(alphabet)
        alphabet.require(condition.variables())
        return cls(alphabet, condition.evaluate(universe).truth())

    @classmethod
    def from_rows(cls, alphabet: Alphabet, rows: Iterable[Mapping[str, Any]]) -> "Predicate":
        universe = UniverseFactory.get_universe(alphabet)
        mask = np.zeros(alphabet.size, dtype=bool)
        for row in rows:
            alphabet.require(row)
            missing = [n for n in alphabet.names if n not in row]
            if missing:
                raise RelationError(f"Binding is not total, missing {missing}")
            index = 0
            for position, variable in enumerate(alphabet.variables):
                code = variable.domain.code(row[variable.name])
                if code < 0:
                    raise DomainViolation(variable.name, f"{row[variable.name]!r} is not in {variable.domain!r}")
                index += code * universe.strides[position]
            mask[index] = True
        return cls(alphabet, mask)

    @classmethod
    def from_function(cls, alphabet: Alphabet, fn: Callable[[Dict[str, Any]], bool]) -> "Predicate":
        """Bindings accepted by a Python function; one call per binding."""
        universe = UniverseFactory.get_universe(alphabet)
        try:
            mask = np.fromiter((bool(fn(universe.decode(i))) for i in range(universe.size)), dtype=bool, count=universe.size)
        except RelationError:
            raise
        except Exception as e:
            raise EvaluationError("predicate construction", str(e)) from e
        return cls(alphabet, mask)

    def _require_same(self, other: "Predicate", operation: str) -> None:
        if not isinstance(other, Predicate):
            raise TypeError(f"{operation} expects a Predicate, got {type(other).__name__}")
        if self.alphabet != other.alphabet:
            raise AlphabetMismatch(operation, f"{self.alphabet} vs {other.alphabet}")

    def __and__(self, other: "Predicate") -> "Predicate":
        self._require_same(other, "conjunction")
        return Predicate(self.alphabet, self.mask & other.mask)

    def __or__(self, other: "Predicate") -> "Predicate":
        self._require_same(other, "disjunction")
        return Predicate(self.alphabet, self.mask | other.mask)

    def __invert__(self) -> "Predicate":
        return Predicate(self.alphabet, ~self.mask)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Predicate)
            and self.alphabet == other.alphabet
            and bool(np.array_equal(self.mask, other.mask))
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, np.packbits(self.mask).tobytes()))

    def __len__(self) -> int:
        return self.count

    @property
    def count(self) -> int:
        return int(np.count_nonzero(self.mask))

    @property
    def is_empty(self) -> bool:
        return not self.mask.any()

    @property
    def matrix(self) -> np.ndarray:
        """The mask as a before × after matrix."""
        return self.mask.reshape(self.alphabet.in_size, self.alphabet.out_size)

    def rows(self) -> Iterator[Dict[str, Any]]:
        return iter(self.universe.rows(self.mask))

    def first_row(self) -> Dict[str, Any]:
        hits = np.flatnonzero(self.mask)
        if not hits.size:
            raise RelationError("false has no rows")
        return self.universe.decode(int(hits[0]))

    def to_frame(self) -> pd.DataFrame:
        return self.universe.to_frame(self.mask)

    def summarise(self) -> PredicateSummary:
        """Row count and per-variable value counts over the predicate's rows."""
        frame = self.to_frame()
        total = len(frame)
        variables = []
        for variable in self.alphabet.variables:
            counts = frame[variable.name].astype(str).value_counts(sort=False).sort_index() if total else pd.Series(dtype=int)
            variables.append(
                VariableSummary(
                    name=variable.name,
                    role=variable.role.value,
                    values=[
                        ValueCount(value=str(value), count=int(count), percentage=round(count / total * 100, 1))
                        for value, count in counts.items()
                    ],
                )
            )
        return PredicateSummary(rows=total, universe=self.alphabet.size, variables=variables)

    def __repr__(self) -> str:
        return f"Predicate({self.count}/{self.alphabet.size} rows over {self.alphabet})"
