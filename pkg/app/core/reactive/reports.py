from typing import Optional

import numpy as np

from app.core.models import encode_binding
from app.core.relations import Predicate, refines
from app.core.reactive.types import Counterexample, TheoryReport


def _counterexample(p: Predicate, row: int, description: str) -> Counterexample:
    binding = p.universe.decode(row)
    return Counterexample(predicate=description, binding=encode_binding(binding, p.alphabet.trace_model))


def verified(theorem: str, cases: int = 1) -> TheoryReport:
    return TheoryReport(theorem=theorem, verified=True, cases=cases)


def compare(theorem: str, lhs: Predicate, rhs: Predicate, lhs_name: str = "lhs", rhs_name: str = "rhs") -> TheoryReport:
    """Report on the extensional equality lhs = rhs, citing the first binding they disagree on."""
    difference = np.flatnonzero(lhs.mask ^ rhs.mask)
    if not difference.size:
        return verified(theorem)
    row = int(difference[0])
    inside, outside = (lhs_name, rhs_name) if lhs.mask[row] else (rhs_name, lhs_name)
    return TheoryReport(
        theorem=theorem,
        verified=False,
        counterexample=_counterexample(lhs, row, f"row of {inside} missing from {outside}"),
    )


def compare_refines(theorem: str, weaker: Predicate, stronger: Predicate, weaker_name: str, stronger_name: str) -> TheoryReport:
    """Report on weaker ⊑ stronger, citing a row of the stronger side the weaker lacks."""
    if refines(weaker, stronger):
        return verified(theorem)
    row = int(np.flatnonzero(stronger.mask & ~weaker.mask)[0])
    return TheoryReport(
        theorem=theorem,
        verified=False,
        counterexample=_counterexample(stronger, row, f"row of {stronger_name} missing from {weaker_name}"),
    )


def precondition_failed(
    theorem: str, p: Predicate, healthy: Predicate, name: str, diagnostic: Optional[TheoryReport] = None
) -> TheoryReport:
    """A report for an input that is not a fixed point of the required condition."""
    row = int(np.flatnonzero(p.mask ^ healthy.mask)[0])
    return TheoryReport(
        theorem=theorem,
        verified=False,
        precondition_failed=True,
        counterexample=_counterexample(p, row, f"{name} is not healthy here"),
        diagnostic=diagnostic,
    )
