import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from app.config.settings import settings
from app.core.algebra.base import TraceModel
from app.core.algebra.exceptions import GeneratorError, TraceAlgebraError
from app.core.algebra.types import CheckMode, ExhaustiveMode, LawReport
from app.utils.logger import logger

log = logger("app.core.algebra.laws")

Case = Tuple[Any, ...]


@dataclass(frozen=True)
class Law:
    name: str
    arity: int
    holds: Callable[..., bool]
    statement: str


def _implies(a: bool, b: bool) -> bool:
    return (not a) or b


def _ta1(m: TraceModel, x, y, z) -> bool:
    return m.eq(m.concat(x, m.concat(y, z)), m.concat(m.concat(x, y), z))


def _ta2(m: TraceModel, x) -> bool:
    e = m.empty()
    return m.eq(m.concat(e, x), x) and m.eq(m.concat(x, e), x)


def _ta3(m: TraceModel, x, y, z) -> bool:
    return _implies(m.eq(m.concat(x, y), m.concat(x, z)), m.eq(y, z))


def _ta4(m: TraceModel, x, y, z) -> bool:
    return _implies(m.eq(m.concat(x, z), m.concat(y, z)), m.eq(x, y))


def _ta5(m: TraceModel, x, y) -> bool:
    e = m.empty()
    if not m.eq(m.concat(x, y), e):
        return True
    # the dual, y = ε, is checked alongside
    return m.eq(x, e) and m.eq(y, e)


def _tp1(m: TraceModel, x, y, z) -> bool:
    reflexive = m.prefix(x, x)
    antisymmetric = _implies(m.prefix(x, y) and m.prefix(y, x), m.eq(x, y))
    transitive = _implies(m.prefix(x, y) and m.prefix(y, z), m.prefix(x, z))
    return reflexive and antisymmetric and transitive


def _tp2(m: TraceModel, x) -> bool:
    return m.prefix(m.empty(), x)


def _tp3(m: TraceModel, x, y) -> bool:
    return m.prefix(x, m.concat(x, y))


def _tp4(m: TraceModel, x, y, z) -> bool:
    return m.prefix(m.concat(x, y), m.concat(x, z)) == m.prefix(y, z)


def _ts1(m: TraceModel, x) -> bool:
    return m.eq(m.subtract(x, m.empty()), x)


def _ts2(m: TraceModel, x) -> bool:
    return m.eq(m.subtract(m.empty(), x), m.empty())


def _ts3(m: TraceModel, x) -> bool:
    return m.eq(m.subtract(x, x), m.empty())


def _ts4(m: TraceModel, x, y) -> bool:
    return m.eq(m.subtract(m.concat(x, y), x), y)


def _ts5(m: TraceModel, x, y, z) -> bool:
    return m.eq(m.subtract(m.subtract(x, y), z), m.subtract(x, m.concat(y, z)))


def _ts6(m: TraceModel, x, y, z) -> bool:
    return m.eq(m.subtract(m.concat(x, y), m.concat(x, z)), m.subtract(y, z))


def _ts7(m: TraceModel, x, y) -> bool:
    left = m.prefix(y, x) and m.eq(m.subtract(x, y), m.empty())
    return left == m.eq(x, y)


def _ts8(m: TraceModel, x, y) -> bool:
    return _implies(m.prefix(x, y), m.eq(m.concat(x, m.subtract(y, x)), y))


LAWS: Tuple[Law, ...] = (
    Law("TA1", 3, _ta1, "x ⌢ (y ⌢ z) = (x ⌢ y) ⌢ z"),
    Law("TA2", 1, _ta2, "ε ⌢ x = x ⌢ ε = x"),
    Law("TA3", 3, _ta3, "x ⌢ y = x ⌢ z ⟹ y = z"),
    Law("TA4", 3, _ta4, "x ⌢ z = y ⌢ z ⟹ x = y"),
    Law("TA5", 2, _ta5, "x ⌢ y = ε ⟹ x = ε ∧ y = ε"),
    Law("TP1", 3, _tp1, "≤ is reflexive, antisymmetric and transitive"),
    Law("TP2", 1, _tp2, "ε ≤ x"),
    Law("TP3", 2, _tp3, "x ≤ x ⌢ y"),
    Law("TP4", 3, _tp4, "x ⌢ y ≤ x ⌢ z ⟺ y ≤ z"),
    Law("TS1", 1, _ts1, "x − ε = x"),
    Law("TS2", 1, _ts2, "ε − x = ε"),
    Law("TS3", 1, _ts3, "x − x = ε"),
    Law("TS4", 2, _ts4, "(x ⌢ y) − x = y"),
    Law("TS5", 3, _ts5, "(x − y) − z = x − (y ⌢ z)"),
    Law("TS6", 3, _ts6, "(x ⌢ y) − (x ⌢ z) = y − z"),
    Law("TS7", 2, _ts7, "(y ≤ x ∧ x − y = ε) ⟺ x = y"),
    Law("TS8", 2, _ts8, "x ≤ y ⟹ x ⌢ (y − x) = y"),
)


def _descriptor(m: TraceModel, x, z) -> bool:
    return m.eq(m.subtract(m.concat(x, z), x), z) and m.eq(
        m.concat(x, m.subtract(m.concat(x, z), x)), m.concat(x, z)
    )


# y = x ⌢ z ⟹ subtract(y, x) = z: the constructed subtraction agrees with the
# definite description it replaces.
DESCRIPTOR_LAW = Law("TS-iota", 2, _descriptor, "y = x ⌢ z ⟹ y − x = z")


def _evaluate(law: Law, model: TraceModel, case: Case) -> bool:
    try:
        return bool(law.holds(model, *case))
    except TraceAlgebraError:
        raise
    except Exception as e:
        raise TraceAlgebraError(f"Law {law.name} raised on {case!r}: {e}") from e


def _draw_case(model: TraceModel, rng: np.random.Generator, arity: int) -> Case:
    """Draw a case, biased so that prefix-related pairs occur often."""
    try:
        a, b, c = (model.generate(rng) for _ in range(3))
        shape = int(rng.integers(3))
        if shape == 0:
            x, y, z = a, b, c
        elif shape == 1:
            y = model.concat(a, b)
            x, z = a, model.concat(y, c)
        else:
            x, y = model.concat(a, b), a
            z = model.concat(a, c)
    except TraceAlgebraError as e:
        raise GeneratorError(model.name, str(e)) from e
    return (x, y, z)[:arity]


def _shrink(law: Law, model: TraceModel, case: Case) -> Case:
    """Greedy shrink: replace one component at a time while the law still fails."""
    improved = True
    while improved:
        improved = False
        for i, value in enumerate(case):
            for candidate in model.shrink(value):
                trial = case[:i] + (candidate,) + case[i + 1:]
                if not _evaluate(law, model, trial):
                    case = trial
                    improved = True
                    break
            if improved:
                break
    return case


def _report(law: Law, model: TraceModel, cases: int, failure: Optional[Case]) -> LawReport:
    if failure is None:
        return LawReport(law=law.name, cases=cases, passed=True)
    log.warning("{} refuted on {} by {}", law.name, model.name, failure)
    return LawReport(
        law=law.name,
        cases=cases,
        passed=False,
        counterexample=[model.to_json(v) for v in failure],
    )


def _check_exhaustive(law: Law, model: TraceModel, values: Sequence[Any]) -> LawReport:
    cases = 0
    for case in itertools.product(values, repeat=law.arity):
        cases += 1
        if not _evaluate(law, model, case):
            return _report(law, model, cases, case)
    return _report(law, model, cases, None)


def _check_randomized(law: Law, model: TraceModel, count: int, seed_seq: np.random.SeedSequence) -> LawReport:
    rng = np.random.default_rng(seed_seq)
    for i in range(count):
        case = _draw_case(model, rng, law.arity)
        if not _evaluate(law, model, case):
            return _report(law, model, i + 1, _shrink(law, model, case))
    return _report(law, model, count, None)


def _enumerate(model: TraceModel, bound: int) -> List[Any]:
    try:
        values = list(model.enumerate(bound))
    except GeneratorError:
        raise
    except Exception as e:
        raise GeneratorError(model.name, str(e)) from e
    if not values:
        raise GeneratorError(model.name, f"enumeration up to {bound} is empty")
    return sorted(values, key=model.size)


def run_laws(model: TraceModel, mode: CheckMode, laws: Iterable[Law]) -> List[LawReport]:
    laws = list(laws)
    if isinstance(mode, ExhaustiveMode):
        values = _enumerate(model, mode.bound)
        log.debug("exhaustive law check on {} over {} values", model.name, len(values))
        jobs = [lambda law=law: _check_exhaustive(law, model, values) for law in laws]
    else:
        seeds = np.random.SeedSequence(mode.seed).spawn(len(laws))
        jobs = [
            lambda law=law, s=s: _check_randomized(law, model, mode.count, s)
            for law, s in zip(laws, seeds)
        ]
    with ThreadPoolExecutor(max_workers=max(1, settings.MAX_WORKERS)) as pool:
        return list(pool.map(lambda job: job(), jobs))


def check_laws(model: TraceModel, mode: CheckMode) -> List[LawReport]:
    """Run the seventeen trace-algebra laws against `model`, one report per law."""
    log.info("checking trace-algebra laws on {} ({})", model.name, mode.kind)
    return run_laws(model, mode, LAWS)


def check_descriptor(model: TraceModel, mode: CheckMode) -> LawReport:
    return run_laws(model, mode, [DESCRIPTOR_LAW])[0]
