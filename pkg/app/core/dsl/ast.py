"""Abstract syntax of formulas and the trace expressions inside them."""
from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple, Union


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class EventsLit:
    events: Tuple[str, ...]


@dataclass(frozen=True)
class RatLit:
    value: Fraction


@dataclass(frozen=True)
class StrLit:
    value: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class TimedLit:
    text: str  # canonical JSON


@dataclass(frozen=True)
class Concat:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Minus:
    left: "Expr"
    right: "Expr"


Expr = Union[VarRef, Eps, EventsLit, RatLit, StrLit, BoolLit, TimedLit, Concat, Minus]


@dataclass(frozen=True)
class Truth:
    value: bool


@dataclass(frozen=True)
class Skip:
    pass


@dataclass(frozen=True)
class Name:
    """A bare identifier: a boolean variable or a named predicate."""

    name: str


@dataclass(frozen=True)
class Compare:
    op: str  # "=", "!=" or "<="
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Cond:
    left: "Formula"
    guard: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Exists:
    names: Tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Subst:
    body: "Formula"
    values: Tuple[Expr, ...]
    names: Tuple[str, ...]


@dataclass(frozen=True)
class Healthy:
    condition: str
    body: "Formula"


@dataclass(frozen=True)
class Seq:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Par:
    left: "Formula"
    merge: "Formula"
    right: "Formula"


Formula = Union[Truth, Skip, Name, Compare, Not, And, Or, Implies, Cond, Exists, Subst, Healthy, Seq, Par]

HEALTH_KEYWORDS = ("R1", "R2c", "R3", "R", "R2m", "Rm")
