"""
Value-level terms evaluated over every binding of a universe at once.

A term evaluates to an `Evaluated`: a table of the distinct values it takes
and, for each binding, the index of its value in that table. Function
application only runs on the distinct argument combinations, so a trace
operation over a universe of half a million bindings costs a few dozen calls.
"""
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Sequence, Tuple

import numpy as np

from app.core.algebra.base import TraceModel
from app.core.relations.domains import Domain, value_key
from app.core.relations.exceptions import EvaluationError, RelationError
from app.core.relations.universe import Universe


class ValueTable:
    def __init__(self) -> None:
        self.values: List[Any] = []
        self._codes: Dict[Hashable, int] = {}

    @classmethod
    def from_domain(cls, domain: Domain) -> "ValueTable":
        table = cls()
        for value in domain.values:
            table.intern(value)
        return table

    def intern(self, value: Any) -> int:
        key = value_key(value)
        code = self._codes.get(key)
        if code is None:
            code = len(self.values)
            self._codes[key] = code
            self.values.append(value)
        return code

    def __len__(self) -> int:
        return len(self.values)


@dataclass
class Evaluated:
    table: ValueTable
    codes: np.ndarray

    def truth(self) -> np.ndarray:
        """Boolean mask of a boolean-valued term."""
        flags = np.array(
            [isinstance(v, (bool, np.bool_)) and bool(v) for v in self.table.values] or [False],
            dtype=bool,
        )
        return flags[self.codes]

    def in_domain(self, domain: Domain) -> np.ndarray:
        """Domain code of each binding's value, -1 where the value lies outside."""
        lookup = np.array([domain.code(v) for v in self.table.values] or [-1], dtype=np.int64)
        return lookup[self.codes]


class Term:
    def evaluate(self, universe: Universe) -> Evaluated:
        raise NotImplementedError

    def variables(self) -> Tuple[str, ...]:
        return ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def evaluate(self, universe: Universe) -> Evaluated:
        domain = universe.alphabet.domain(self.name)
        return Evaluated(ValueTable.from_domain(domain), universe.codes(self.name))

    def variables(self) -> Tuple[str, ...]:
        return (self.name,)


@dataclass(frozen=True)
class Const(Term):
    value: Any

    def evaluate(self, universe: Universe) -> Evaluated:
        table = ValueTable()
        table.intern(self.value)
        return Evaluated(table, np.zeros(universe.size, dtype=np.int64))


@dataclass(frozen=True)
class Apply(Term):
    """fn(*args) on the values of `args`; `label` names it in descriptions."""

    fn: Callable[..., Any] = field(compare=False)
    args: Tuple[Term, ...]
    label: str = "fn"

    def _function(self, universe: Universe) -> Callable[..., Any]:
        return self.fn

    def evaluate(self, universe: Universe) -> Evaluated:
        fn = self._function(universe)
        parts = [arg.evaluate(universe) for arg in self.args]
        combined = np.zeros(universe.size, dtype=np.int64)
        for part in parts:
            combined = combined * max(len(part.table), 1) + part.codes
        unique, inverse = np.unique(combined, return_inverse=True)
        table = ValueTable()
        result_codes = np.empty(len(unique), dtype=np.int64)
        for i, code in enumerate(unique.tolist()):
            values = []
            for part in reversed(parts):
                radix = max(len(part.table), 1)
                values.append(part.table.values[code % radix])
                code //= radix
            try:
                result_codes[i] = table.intern(fn(*reversed(values)))
            except RelationError:
                raise
            except Exception as e:
                raise EvaluationError(f"evaluation of {self.label}", str(e)) from e
        return Evaluated(table, result_codes[inverse.reshape(-1)])

    def variables(self) -> Tuple[str, ...]:
        names: List[str] = []
        for arg in self.args:
            names += [n for n in arg.variables() if n not in names]
        return tuple(names)


def _trace_model(universe: Universe) -> TraceModel:
    model = universe.alphabet.trace_model
    if model is None:
        raise RelationError(f"{universe.alphabet} has no trace-valued variable")
    return model


class _TraceOp(Apply):
    method = ""

    def __init__(self, left: Term, right: Term):
        object.__setattr__(self, "fn", self.method)
        object.__setattr__(self, "args", (left, right))
        object.__setattr__(self, "label", self.method)

    @property
    def left(self) -> Term:
        return self.args[0]

    @property
    def right(self) -> Term:
        return self.args[1]

    def _function(self, universe: Universe) -> Callable[..., Any]:
        return getattr(_trace_model(universe), self.method)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"


class Cat(_TraceOp):
    """left ⌢ right."""

    method = "concat"


class Sub(_TraceOp):
    """left − right."""

    method = "subtract"


class Prefix(_TraceOp):
    """left ≤ right, boolean valued."""

    method = "prefix"


@dataclass(frozen=True)
class Eq(Term):
    left: Term
    right: Term

    def evaluate(self, universe: Universe) -> Evaluated:
        lhs, rhs = self.left.evaluate(universe), self.right.evaluate(universe)
        joint = ValueTable()
        lmap = np.array([joint.intern(v) for v in lhs.table.values] or [-1], dtype=np.int64)
        rmap = np.array([joint.intern(v) for v in rhs.table.values] or [-2], dtype=np.int64)
        return boolean(universe, lmap[lhs.codes] == rmap[rhs.codes])

    def variables(self) -> Tuple[str, ...]:
        return tuple(dict.fromkeys(self.left.variables() + self.right.variables()))


def boolean(universe: Universe, mask: np.ndarray) -> Evaluated:
    table = ValueTable()
    table.intern(False)
    table.intern(True)
    return Evaluated(table, mask.astype(np.int64))


def as_term(value: Any) -> Term:
    return value if isinstance(value, Term) else Const(value)


def function_of(fn: Callable[..., Any], names: Sequence[str], label: str = "fn") -> Term:
    """A term computing fn(*values of names)."""
    return Apply(fn, tuple(Var(n) for n in names), label)
