from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from app.core.algebra.base import TraceModel
from app.core.relations.domains import Domain
from app.core.relations.exceptions import RelationError, UnknownVariable


class Role(str, Enum):
    BEFORE = "before"
    INPUT = "input"  # before-only, no primed twin
    AFTER = "after"


def primed(name: str) -> str:
    return f"{name}'"


def unprimed(name: str) -> str:
    return name[:-1] if name.endswith("'") else name


@dataclass(frozen=True)
class Variable:
    name: str
    domain: Domain
    role: Role


class Alphabet:
    """
    Ordered variables of a relation: the before block (unprimed and input-only
    variables) followed by the after block (primed twins, in the same order as
    their unprimed counterparts). Bindings are enumerated in this order with the
    last variable varying fastest, so a predicate's row set reshapes into a
    before × after matrix.
    """

    def __init__(self, before: Mapping[str, Domain], input_only: Optional[Mapping[str, Domain]] = None):
        input_only = dict(input_only or {})
        clash = set(before) & set(input_only)
        if clash:
            raise RelationError(f"Variables declared twice: {sorted(clash)}")
        for name in list(before) + list(input_only):
            if name.endswith("'"):
                raise RelationError(f"Declare unprimed names only, got '{name}'")
        variables: List[Variable] = [Variable(n, d, Role.BEFORE) for n, d in before.items()]
        variables += [Variable(n, d, Role.INPUT) for n, d in input_only.items()]
        variables += [Variable(primed(n), d, Role.AFTER) for n, d in before.items()]
        self.variables: Tuple[Variable, ...] = tuple(variables)
        self._index: Dict[str, int] = {v.name: i for i, v in enumerate(self.variables)}

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self.variables)

    @property
    def before(self) -> Tuple[Variable, ...]:
        return tuple(v for v in self.variables if v.role == Role.BEFORE)

    @property
    def inputs(self) -> Tuple[Variable, ...]:
        return tuple(v for v in self.variables if v.role == Role.INPUT)

    @property
    def after(self) -> Tuple[Variable, ...]:
        return tuple(v for v in self.variables if v.role == Role.AFTER)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(v.domain.size for v in self.variables)

    @property
    def size(self) -> int:
        total = 1
        for n in self.shape:
            total *= n
        return total

    @property
    def in_size(self) -> int:
        total = 1
        for v in self.before + self.inputs:
            total *= v.domain.size
        return total

    @property
    def out_size(self) -> int:
        total = 1
        for v in self.after:
            total *= v.domain.size
        return total

    @property
    def trace_model(self) -> Optional[TraceModel]:
        """Model of the first trace-valued variable, if any."""
        for variable in self.variables:
            model = getattr(variable.domain, "model", None)
            if model is not None:
                return model
        return None

    def position(self, name: str) -> int:
        if name not in self._index:
            raise UnknownVariable(name, self.names)
        return self._index[name]

    def variable(self, name: str) -> Variable:
        return self.variables[self.position(name)]

    def domain(self, name: str) -> Domain:
        return self.variable(name).domain

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def require(self, names: Iterable[str]) -> None:
        for name in names:
            self.position(name)

    def declaration(self) -> Tuple[Dict[str, Domain], Dict[str, Domain]]:
        return (
            {v.name: v.domain for v in self.before},
            {v.name: v.domain for v in self.inputs},
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.variables == other.variables

    def __hash__(self) -> int:
        return hash(self.variables)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"
