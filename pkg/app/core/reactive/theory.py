"""
The lattice of R-healthy predicates and executable forms of its theorems.

Each `check_*` function decides one theorem instance extensionally and returns
a TheoryReport; inputs that miss a theorem's healthiness precondition produce a
precondition-failure report rather than a verdict.
"""
import itertools
from typing import Iterable, List, Optional, Sequence

import numpy as np

from app.core.relations import Alphabet, Predicate, UniverseFactory, lattice_inf, lattice_sup, seq_comp
from app.core.relations.alphabet import primed
from app.core.reactive.alphabet import TR, require_reactive
from app.core.reactive.exceptions import EmptySet, UnhealthyMember
from app.core.reactive.healthiness import (
    R,
    R1,
    R1_R2c,
    R2c,
    R3,
    Healthiness,
    history_deleted,
    reactive_skip,
    trace_grows,
    waiting,
)
from app.core.reactive.reports import compare, compare_refines, precondition_failed, verified
from app.core.reactive.types import TheoryReport
from app.utils.logger import logger

log = logger("app.core.reactive.theory")


def _require_healthy(operation: str, predicates: Sequence[Predicate], condition: Healthiness = R) -> None:
    for index, p in enumerate(predicates):
        if condition(p) != p:
            raise UnhealthyMember(operation, index, condition.__name__)


def theory_inf(predicates: Iterable[Predicate], alphabet: Optional[Alphabet] = None) -> Predicate:
    """⨅_R A = R(⨅ A)."""
    predicates = list(predicates)
    _require_healthy("theory infimum", predicates)
    return R(lattice_inf(predicates, alphabet))


def theory_sup(predicates: Iterable[Predicate], alphabet: Optional[Alphabet] = None) -> Predicate:
    """
    The ⊑-least R-healthy upper bound of A: the largest healthy row set inside ⋂A.

    Outside the waiting rows, a row r of R(X) is a growing row whose
    history-deleted binding h(r) lies in X. So R(X) stays inside ⋂A exactly
    when X avoids h(r) for every growing, non-waiting r outside ⋂A, and the
    R-image of the largest such X is the supremum. For A = ∅ this is R(false).
    """
    predicates = list(predicates)
    _require_healthy("theory supremum", predicates)
    bound = lattice_sup(predicates, alphabet)
    alphabet = bound.alphabet
    escaping = ~waiting(alphabet) & trace_grows(alphabet) & ~bound.mask
    allowed = np.ones(alphabet.size, dtype=bool)
    allowed[history_deleted(alphabet)[escaping]] = False
    result = R(Predicate(alphabet, allowed))
    log.debug("theory supremum keeps {} of {} rows of ⋂A", result.count, bound.count)
    return result


def contribution_form(p: Predicate) -> Predicate:
    """∃t • P[ε, t / tr, tr′] ∧ tr′ = tr ⌢ t over the trace universe."""
    traces = require_reactive(p.alphabet)
    universe = UniverseFactory.get_universe(p.alphabet)
    tr, tr_after = universe.codes(TR), universe.codes(primed(TR))
    empty = np.full(universe.size, traces.empty_code, dtype=np.int64)
    mask = np.zeros(universe.size, dtype=bool)
    for t in range(traces.size):
        fixed = np.full(universe.size, t, dtype=np.int64)
        contributed = p.mask[universe.flat_index({TR: empty, primed(TR): fixed})]
        mask |= contributed & (tr_after == traces.concat_table[tr, t])
    return Predicate(p.alphabet, mask)


def _own_contribution(p: Predicate, t: int) -> Predicate:
    """P[ε, t / tr, tr′]: independent of tr and tr′."""
    traces = require_reactive(p.alphabet)
    universe = UniverseFactory.get_universe(p.alphabet)
    index = universe.flat_index(
        {
            TR: np.full(universe.size, traces.empty_code, dtype=np.int64),
            primed(TR): np.full(universe.size, t, dtype=np.int64),
        }
    )
    return Predicate(p.alphabet, p.mask[index])


def sequential_contribution(p: Predicate, q: Predicate) -> Predicate:
    """∃t₁, t₂ • (P[ε, t₁ / tr, tr′] ; Q[ε, t₂ / tr, tr′]) ∧ tr′ = tr ⌢ t₁ ⌢ t₂."""
    traces = require_reactive(p.alphabet)
    universe = UniverseFactory.get_universe(p.alphabet)
    tr, tr_after = universe.codes(TR), universe.codes(primed(TR))
    concat = traces.concat_table
    mask = np.zeros(universe.size, dtype=bool)
    for t1 in range(traces.size):
        left = _own_contribution(p, t1)
        if left.is_empty:
            continue
        middle = concat[tr, t1]
        for t2 in range(traces.size):
            right = _own_contribution(q, t2)
            if right.is_empty:
                continue
            end = np.where(middle >= 0, concat[np.maximum(middle, 0), t2], -1)
            mask |= seq_comp(left, right).mask & (middle >= 0) & (tr_after == end)
    return Predicate(p.alphabet, mask)


def check_idempotent(name: str, condition: Healthiness, p: Predicate) -> TheoryReport:
    image = condition(p)
    return compare(f"{name} idempotent", condition(image), image, f"{name}({name}(P))", f"{name}(P)")


def check_commute(names: str, first: Healthiness, second: Healthiness, p: Predicate) -> TheoryReport:
    a, b = names.split("/")
    return compare(f"{a}∘{b} = {b}∘{a}", first(second(p)), second(first(p)), f"{a}({b}(P))", f"{b}({a}(P))")


def check_monotone(name: str, condition: Healthiness, weaker: Predicate, stronger: Predicate) -> TheoryReport:
    """P ⊑ Q ⟹ H(P) ⊑ H(Q)."""
    theorem = f"{name} monotone"
    if not compare_refines(theorem, weaker, stronger, "P", "Q").verified:
        return precondition_failed(theorem, stronger, stronger & weaker, "Q ⊑-above P")
    return compare_refines(theorem, condition(weaker), condition(stronger), f"{name}(P)", f"{name}(Q)")


def check_contribution(p: Predicate) -> TheoryReport:
    return compare("R1-R2c trace contribution", contribution_form(p), R1(R2c(p)), "contribution form", "R1(R2c(P))")


def check_R_is_R1(p: Predicate) -> TheoryReport:
    image = R(p)
    return compare("R(P) is R1-healthy", R1(image), image, "R1(R(P))", "R(P)")


def _precondition(theorem: str, condition: Healthiness, label: str, *predicates: Predicate) -> Optional[TheoryReport]:
    for name, p in zip(("P", "Q"), predicates):
        healthy = condition(p)
        if healthy != p:
            return precondition_failed(theorem, p, healthy, f"{name} under {label}")
    return None


def check_seq_contribution(p: Predicate, q: Predicate) -> TheoryReport:
    """P ; Q as the two-witness decomposition of each side's own trace contribution."""
    theorem = "R1-R2c sequential"
    failed = _precondition(theorem, R1_R2c, "R1∘R2c", p, q)
    if failed is not None:
        return failed
    return compare(theorem, seq_comp(p, q), sequential_contribution(p, q), "P ; Q", "decomposition")


def check_closures(p: Predicate, q: Predicate) -> List[TheoryReport]:
    """Closure of ; under R1∘R2c, R3 and R."""
    composed = seq_comp(p, q)
    reports = []
    for theorem, condition, label in (
        ("R1-R2c sequential closure", R1_R2c, "R1∘R2c"),
        ("R3 sequential closure", R3, "R3"),
        ("R sequential closure", R, "R"),
    ):
        failed = _precondition(theorem, condition, label, p, q)
        if failed is None:
            reports.append(compare(theorem, condition(composed), composed, f"{label}(P ; Q)", "P ; Q"))
        else:
            reports.append(failed)
    return reports


def check_lattice(predicates: Sequence[Predicate]) -> List[TheoryReport]:
    """⨅_R A and ⨆_R A are healthy and bound every member of A."""
    inf, sup = theory_inf(predicates), theory_sup(predicates)
    reports = [
        compare("theory infimum healthy", R(inf), inf, "R(⨅A)", "⨅A"),
        compare("theory supremum healthy", R(sup), sup, "R(⨆A)", "⨆A"),
    ]
    lower, upper = verified("theory infimum lower bound"), verified("theory supremum upper bound")
    for member in predicates:
        if lower.verified:
            lower = compare_refines("theory infimum lower bound", inf, member, "⨅A", "member")
        if upper.verified:
            upper = compare_refines("theory supremum upper bound", member, sup, "member", "⨆A")
    return reports + [lower, upper]


def check_quantale(predicates: Sequence[Predicate], p: Predicate, q: Predicate) -> List[TheoryReport]:
    """Q1, Q2 and Q3 of the weak unital quantale of R-healthy predicates."""
    predicates = list(predicates)
    if not predicates:
        raise EmptySet("quantale check")
    names = ("Q1 left distributivity", "Q2 right distributivity", "Q3 unit")
    for index, member in enumerate(itertools.chain(predicates, (p, q))):
        healthy = R(member)
        if healthy != member:
            label = f"member {index}" if index < len(predicates) else ("P", "Q")[index - len(predicates)]
            return [precondition_failed(theorem, member, healthy, label) for theorem in names]
    inf = theory_inf(predicates)

    skip_ = reactive_skip(p.alphabet)
    q1 = compare(names[0], seq_comp(p, inf), R(lattice_inf([seq_comp(p, x) for x in predicates])), "P ; ⨅A", "⨅{P ; X}")
    q2 = compare(names[1], seq_comp(inf, q), R(lattice_inf([seq_comp(x, q) for x in predicates])), "⨅A ; Q", "⨅{X ; Q}")
    q3 = compare(names[2], seq_comp(p, skip_), p, "P ; II", "P")
    if q3.verified:
        q3 = compare(names[2], seq_comp(skip_, p), p, "II ; P", "P")
    return [q1, q2, q3]
