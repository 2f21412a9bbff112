from functools import lru_cache
from typing import Any, Callable, FrozenSet, Union

import numpy as np

from app.core.models.sequences import EventSeq
from app.core.relations import Alphabet, Apply, Eq, Predicate, UniverseFactory, Var
from app.core.relations.alphabet import primed
from app.core.reactive.alphabet import TR, WAIT, program_variables, require_reactive
from app.core.parallel.merge import Rm, indexed, process_alphabet
from app.core.relations.exceptions import RelationError

StatePolicy = Union[str, Callable[[Any, Any], Any]]
WaitPolicy = Union[str, Callable[[bool, bool], bool]]


@lru_cache(maxsize=1024)
def interleavings(s: EventSeq, t: EventSeq) -> FrozenSet[EventSeq]:
    """All order-preserving shuffles of s and t."""
    if not s.items:
        return frozenset({t})
    if not t.items:
        return frozenset({s})
    head_s = {EventSeq((s.items[0],) + rest.items) for rest in interleavings(EventSeq(s.items[1:]), t)}
    head_t = {EventSeq((t.items[0],) + rest.items) for rest in interleavings(s, EventSeq(t.items[1:]))}
    return frozenset(head_s | head_t)


def _shuffle_table(alphabet: Alphabet) -> np.ndarray:
    """table[i, j, k] iff trace k is an interleaving of traces i and j."""
    traces = require_reactive(alphabet)
    if traces.model.name != "seq":
        raise RelationError("the interleaving merge needs a sequence-model trace universe")
    n = traces.size
    table = np.zeros((n, n, n), dtype=bool)
    for i, s in enumerate(traces.values):
        for j, t in enumerate(traces.values):
            for shuffle in interleavings(s, t):
                k = traces.code(shuffle)
                if k >= 0:
                    table[i, j, k] = True
    return table


def _policy_term(policy: Union[str, Callable], name: str, choices: dict) -> Apply:
    fn = choices.get(policy) if isinstance(policy, str) else policy
    if fn is None:
        raise ValueError(f"unknown policy {policy!r}; expected one of {sorted(choices)} or a callable")
    return Apply(fn, (Var(indexed(0, name)), Var(indexed(1, name))), getattr(policy, "__name__", str(policy)))


def make_interleave_merge(merged: Alphabet, state: StatePolicy = "left", wait: WaitPolicy = "any") -> Predicate:
    """
    The Rm-image of: tr ≤ 0.tr, tr ≤ 1.tr, tr ≤ tr′, tr′ − tr an interleaving of
    0.tr − tr and 1.tr − tr, wait′ combined from 0.wait and 1.wait by the wait
    policy, and each program variable combined by the state policy.
    """
    process = process_alphabet(merged)
    traces = require_reactive(merged)
    universe = UniverseFactory.get_universe(merged)
    prefix, subtract = traces.prefix_table, traces.subtract_table
    tr, tr_after = universe.codes(TR), universe.codes(primed(TR))
    left, right = universe.codes(indexed(0, TR)), universe.codes(indexed(1, TR))
    mask = prefix[tr, left] & prefix[tr, right] & prefix[tr, tr_after]
    mask &= _shuffle_table(merged)[subtract[left, tr], subtract[right, tr], subtract[tr_after, tr]]

    waits = {"any": lambda a, b: a or b, "all": lambda a, b: a and b}
    mask &= Eq(Var(primed(WAIT)), _policy_term(wait, WAIT, waits)).evaluate(universe).truth()
    states = {"left": lambda a, b: a, "right": lambda a, b: b}
    for name in program_variables(process):
        mask &= Eq(Var(primed(name)), _policy_term(state, name, states)).evaluate(universe).truth()
    return Rm(Predicate(merged, mask))
