"""
Reactive healthiness conditions as predicate transformers.

R1 keeps the bindings whose trace only grows, R2c deletes the trace history
on the tr ≤ tr′ branch, and R3 behaves as II while a predecessor waits. All
three work on domain codes: the prefix and subtraction tables of the trace
universe give their conditions and substitutions without evaluating terms.
"""
from functools import lru_cache
from typing import Callable, Dict

import numpy as np

from app.core.relations import Alphabet, Predicate, UniverseFactory, ite, skip
from app.core.relations.alphabet import primed
from app.core.reactive.alphabet import TR, WAIT, require_reactive
from app.core.reactive.exceptions import UnknownHealthiness

Healthiness = Callable[[Predicate], Predicate]


@lru_cache(maxsize=32)
def trace_grows(alphabet: Alphabet) -> np.ndarray:
    """tr ≤ tr′ on every binding."""
    traces = require_reactive(alphabet)
    universe = UniverseFactory.get_universe(alphabet)
    return traces.prefix_table[universe.codes(TR), universe.codes(primed(TR))]


@lru_cache(maxsize=32)
def waiting(alphabet: Alphabet) -> np.ndarray:
    require_reactive(alphabet)
    universe = UniverseFactory.get_universe(alphabet)
    return universe.codes(WAIT) == alphabet.domain(WAIT).code(True)


@lru_cache(maxsize=32)
def history_deleted(alphabet: Alphabet) -> np.ndarray:
    """Row index realising the substitution [ε, tr′ − tr / tr, tr′]."""
    traces = require_reactive(alphabet)
    universe = UniverseFactory.get_universe(alphabet)
    return universe.flat_index(
        {
            TR: np.full(universe.size, traces.empty_code, dtype=np.int64),
            primed(TR): traces.subtract_table[universe.codes(primed(TR)), universe.codes(TR)],
        }
    )


@lru_cache(maxsize=32)
def reactive_skip(alphabet: Alphabet) -> Predicate:
    return skip(alphabet)


def R1(p: Predicate) -> Predicate:
    """P ∧ tr ≤ tr′."""
    return Predicate(p.alphabet, p.mask & trace_grows(p.alphabet))


def R2c(p: Predicate) -> Predicate:
    """P[ε, tr′ − tr / tr, tr′] ◁ tr ≤ tr′ ▷ P."""
    deleted = Predicate(p.alphabet, p.mask[history_deleted(p.alphabet)])
    return ite(Predicate(p.alphabet, trace_grows(p.alphabet)), deleted, p)


def R3(p: Predicate) -> Predicate:
    """II ◁ wait ▷ P."""
    return ite(Predicate(p.alphabet, waiting(p.alphabet)), reactive_skip(p.alphabet), p)


def R(p: Predicate) -> Predicate:
    """R3 ∘ R2c ∘ R1."""
    return R3(R2c(R1(p)))


def R1_R2c(p: Predicate) -> Predicate:
    return R1(R2c(p))


def compose(*conditions: Healthiness) -> Healthiness:
    """The composition applying the last condition first."""

    def composed(p: Predicate) -> Predicate:
        for condition in reversed(conditions):
            p = condition(p)
        return p

    return composed


def is_healthy(condition: Healthiness, p: Predicate) -> bool:
    return condition(p) == p


HEALTHINESS: Dict[str, Healthiness] = {"R1": R1, "R2c": R2c, "R3": R3, "R": R}


def healthiness(name: str) -> Healthiness:
    if name not in HEALTHINESS:
        raise UnknownHealthiness(name, HEALTHINESS)
    return HEALTHINESS[name]


def clear_caches() -> None:
    for cached in (trace_grows, waiting, history_deleted, reactive_skip):
        cached.cache_clear()
