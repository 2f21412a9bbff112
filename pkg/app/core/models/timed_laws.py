from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

import numpy as np

from app.config.settings import settings
from app.core.algebra.types import LawReport
from app.core.models.timed import (
    PartialTrace,
    Segment,
    TimedTrace,
    TimedTraceModel,
    as_partial,
    concat_as_union,
    partial_agree,
    pointwise_eq,
    sample_points,
    tt_closure_check,
    tt_concat,
    tt_end,
    tt_shift,
)
from app.utils.logger import logger

log = logger("app.core.models.timed_laws")

Check = Callable[[TimedTraceModel, np.random.Generator], Optional[list]]


def _offset(model: TimedTraceModel, rng: np.random.Generator) -> Fraction:
    return model.durations[int(rng.integers(len(model.durations)))] * int(rng.integers(0, 3))


def _probe_points(f: PartialTrace, g: PartialTrace, degree: int) -> List[Fraction]:
    cuts = sorted(set([Fraction(0)] + f.breakpoints() + g.breakpoints()))
    last = cuts[-1]
    return sample_points(cuts + [last + 1], degree + 1)


def _degree(*traces: TimedTrace) -> int:
    return max((s.max_degree for t in traces for s in t.segments), default=0)


def _split(f: TimedTrace, rng: np.random.Generator) -> Tuple[Segment, ...]:
    """A non-canonical segmentation of the same function: one segment cut in two."""
    if f.is_empty:
        return ()
    i = int(rng.integers(len(f.segments)))
    s = f.segments[i]
    half = s.duration / 2
    head = Segment(half, s.valuation)
    return f.segments[:i] + (head, s.advanced(half)) + f.segments[i + 1:]


def _t1(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    f, m, n = model.generate(rng), _offset(model, rng), _offset(model, rng)
    lhs, rhs = tt_shift(f, m).shift(n), tt_shift(f, m + n)
    if partial_agree(lhs, rhs, _probe_points(lhs, rhs, _degree(f))):
        return None
    return [model.to_json(f), str(m), str(n)]


def _t2(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    f, g, n = model.generate(rng), model.generate(rng), _offset(model, rng)
    union = as_partial(f).union(tt_shift(g, f.end))
    lhs = union.shift(n)
    rhs = tt_shift(f, n).union(tt_shift(g, f.end).shift(n))
    if partial_agree(lhs, rhs, _probe_points(lhs, rhs, _degree(f, g))):
        return None
    return [model.to_json(f), model.to_json(g), str(n)]


def _t3(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    return None if tt_end(model.empty()) == 0 else [model.to_json(model.empty())]


def _t4(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    x, y = model.generate(rng), model.generate(rng)
    if tt_end(tt_concat(x, y)) == tt_end(x) + tt_end(y):
        return None
    return [model.to_json(x), model.to_json(y)]


def _closure(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    f, g = model.generate(rng), model.generate(rng)
    return None if tt_closure_check(f, g) else [model.to_json(f), model.to_json(g)]


def _canonical_oracle(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    f = model.generate(rng)
    shape = int(rng.integers(3))
    if shape == 0:
        g = model.generate(rng)
    elif shape == 1:
        g = TimedTrace.canonical(_split(f, rng))
    else:
        g = tt_concat(f, model.empty())
    if pointwise_eq(f, g) == (f == g):
        return None
    return [model.to_json(f), model.to_json(g)]


def _associativity(model: TimedTraceModel, rng: np.random.Generator) -> Optional[list]:
    x, y, z = model.generate(rng), model.generate(rng), model.generate(rng)
    left = tt_concat(x, tt_concat(y, z))
    right = tt_concat(tt_concat(x, y), z)
    union = concat_as_union(tt_concat(x, y), z)
    points = _probe_points(as_partial(left), union, _degree(x, y, z))
    if left == right and pointwise_eq(left, right) and partial_agree(as_partial(left), union, points):
        return None
    return [model.to_json(x), model.to_json(y), model.to_json(z)]


TIMED_CHECKS: Tuple[Tuple[str, Check], ...] = (
    ("T1", _t1),
    ("T2", _t2),
    ("T3", _t3),
    ("T4", _t4),
    ("CLOSURE", _closure),
    ("CANONICAL-ORACLE", _canonical_oracle),
    ("ASSOCIATIVITY", _associativity),
)


def _run(name: str, check: Check, model: TimedTraceModel, count: int, seed_seq) -> LawReport:
    rng = np.random.default_rng(seed_seq)
    for i in range(count):
        counterexample = check(model, rng)
        if counterexample is not None:
            log.warning("{} refuted by {}", name, counterexample)
            return LawReport(law=name, cases=i + 1, passed=False, counterexample=counterexample)
    return LawReport(law=name, cases=count, passed=True)


def check_timed_laws(model: TimedTraceModel, count: int, seed: int) -> List[LawReport]:
    """T1–T4, concatenation closure, canonical-form oracle and associativity on random traces."""
    log.info("checking timed-trace laws: {} cases, seed {}", count, seed)
    seeds = np.random.SeedSequence(seed).spawn(len(TIMED_CHECKS))
    with ThreadPoolExecutor(max_workers=max(1, settings.MAX_WORKERS)) as pool:
        return list(
            pool.map(
                lambda item: _run(item[0][0], item[0][1], model, count, item[1]),
                zip(TIMED_CHECKS, seeds),
            )
        )
