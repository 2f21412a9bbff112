"""
Parallel composition by merge.

A merge alphabet extends a reactive alphabet with input-only copies `0.x` and
`1.x` of every state variable. Its bindings enumerate as (state, 0-copy,
1-copy, after-state), so a merge predicate's mask reshapes to a four-axis
array and separation, composition and index swapping are array operations.
"""
from functools import lru_cache

import numpy as np

from app.core.relations import Alphabet, Predicate, UniverseFactory
from app.core.relations.alphabet import primed
from app.core.relations.exceptions import AlphabetMismatch
from app.core.reactive import R1, R3, require_reactive
from app.core.reactive.alphabet import TR
from app.core.reactive.exceptions import NotReactiveAlphabet
from app.core.reactive.healthiness import trace_grows
from app.utils.logger import logger

log = logger("app.core.parallel.merge")

INDICES = (0, 1)


def indexed(index: int, name: str) -> str:
    return f"{index}.{name}"


@lru_cache(maxsize=16)
def merge_alphabet(alphabet: Alphabet) -> Alphabet:
    """The merge alphabet over a reactive process alphabet."""
    require_reactive(alphabet)
    if alphabet.inputs:
        raise NotReactiveAlphabet("process alphabets cannot carry input-only variables")
    before, _ = alphabet.declaration()
    copies = {indexed(n, name): domain for n in INDICES for name, domain in before.items()}
    merged = Alphabet(before, copies)
    log.debug("merge alphabet {} has {} bindings", merged, merged.size)
    return merged


def process_alphabet(merged: Alphabet) -> Alphabet:
    """The reactive alphabet a merge alphabet was built from."""
    before, _ = merged.declaration()
    process = Alphabet(before)
    if merge_alphabet(process) != merged:
        raise AlphabetMismatch("merge", f"{merged} is not a merge alphabet")
    return process


def _state_size(alphabet: Alphabet) -> int:
    return alphabet.out_size


def _four_axes(m: Predicate) -> np.ndarray:
    s = _state_size(m.alphabet)
    return m.mask.reshape(s, s, s, s)


def _require_merge(m: Predicate, process: Alphabet) -> None:
    if m.alphabet != merge_alphabet(process):
        raise AlphabetMismatch("parallel by merge", f"merge predicate over {m.alphabet}, processes over {process}")


def sep(p: Predicate, index: int) -> Predicate:
    """⟦P⟧ₙ: P's after-state re-housed in the index-n copies, everything else free."""
    if index not in INDICES:
        raise ValueError(f"index must be 0 or 1, got {index}")
    merged = merge_alphabet(p.alphabet)
    s = _state_size(p.alphabet)
    matrix = p.mask.reshape(s, s)
    placed = matrix[:, :, None, None] if index == 0 else matrix[:, None, :, None]
    return Predicate(merged, np.broadcast_to(placed, (s, s, s, s)).reshape(-1))


def par_by_merge(p: Predicate, m: Predicate, q: Predicate) -> Predicate:
    """(⟦P⟧₀ ∧ ⟦Q⟧₁ ∧ v′ = v) ; M."""
    if p.alphabet != q.alphabet:
        raise AlphabetMismatch("parallel by merge", f"{p.alphabet} vs {q.alphabet}")
    _require_merge(m, p.alphabet)
    s = _state_size(p.alphabet)
    left, right = p.mask.reshape(s, s), q.mask.reshape(s, s)
    separated = (left[:, :, None] & right[:, None, :]).reshape(s, 1, s * s).astype(np.int32)
    merge = m.mask.reshape(s, s * s, s).astype(np.int32)
    composed = np.matmul(separated, merge)[:, 0, :] > 0
    return Predicate(p.alphabet, composed.reshape(-1))


def swap_indices(m: Predicate) -> Predicate:
    """M with the 0- and 1-copies exchanged."""
    process_alphabet(m.alphabet)
    return Predicate(m.alphabet, _four_axes(m).transpose(0, 2, 1, 3).reshape(-1))


@lru_cache(maxsize=16)
def _merge_history_deleted(merged: Alphabet) -> np.ndarray:
    traces = require_reactive(merged)
    universe = UniverseFactory.get_universe(merged)
    tr = universe.codes(TR)
    subtract = traces.subtract_table
    codes = {
        TR: np.full(universe.size, traces.empty_code, dtype=np.int64),
        primed(TR): subtract[universe.codes(primed(TR)), tr],
    }
    for n in INDICES:
        name = indexed(n, TR)
        codes[name] = subtract[universe.codes(name), tr]
    return universe.flat_index(codes)


def R2m(m: Predicate) -> Predicate:
    """M[ε, tr′ − tr, 0.tr − tr, 1.tr − tr / tr, tr′, 0.tr, 1.tr] ◁ tr ≤ tr′ ▷ M."""
    process_alphabet(m.alphabet)
    deleted = m.mask[_merge_history_deleted(m.alphabet)]
    return Predicate(m.alphabet, np.where(trace_grows(m.alphabet), deleted, m.mask))


def Rm(m: Predicate) -> Predicate:
    """R1 ∘ R2m ∘ R3 on a merge predicate; R3's II leaves the indexed copies free."""
    return R1(R2m(R3(m)))


def merge_guards(merged: Alphabet) -> np.ndarray:
    """tr ≤ 0.tr ∧ tr ≤ 1.tr ∧ 0.tr ≤ tr′ ∧ 1.tr ≤ tr′."""
    traces = require_reactive(merged)
    universe = UniverseFactory.get_universe(merged)
    prefix = traces.prefix_table
    tr, tr_after = universe.codes(TR), universe.codes(primed(TR))
    mask = np.ones(universe.size, dtype=bool)
    for n in INDICES:
        copy = universe.codes(indexed(n, TR))
        mask &= prefix[tr, copy] & prefix[copy, tr_after]
    return mask


def random_merge(merged: Alphabet, rng: np.random.Generator, density: float = 0.3) -> Predicate:
    """An Rm-healthy merge whose indexed traces lie between tr and tr′."""
    raw = (rng.random(merged.size) < density) & merge_guards(merged)
    return Rm(Predicate(merged, raw))
