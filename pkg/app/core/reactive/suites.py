import itertools
from typing import Callable, Dict, Iterator, List

import numpy as np

from app.core.relations import Alphabet, Predicate, UniverseFactory
from app.core.relations.alphabet import primed
from app.core.reactive.alphabet import TR, WAIT
from app.core.reactive.healthiness import R, R1, R1_R2c, R2c, R3, trace_grows
from app.core.reactive.sampling import random_predicate, run_sampled, sample_healthy, sample_pair, sample_set
from app.core.reactive.theory import (
    check_closures,
    check_commute,
    check_contribution,
    check_idempotent,
    check_lattice,
    check_monotone,
    check_quantale,
    check_R_is_R1,
    check_seq_contribution,
)
from app.core.reactive.types import TheoryReport
from app.utils.logger import logger

log = logger("app.core.reactive.suites")

CONDITIONS = (("R1", R1), ("R2c", R2c), ("R3", R3), ("R", R))
COMMUTING = (("R1/R2c", R1, R2c), ("R1/R3", R1, R3), ("R2c/R3", R2c, R3))


def _theory_checks(alphabet: Alphabet) -> Dict[str, Callable[[np.random.Generator], List[TheoryReport]]]:
    def idempotence(rng):
        p = random_predicate(alphabet, rng)
        return [check_idempotent(name, h, p) for name, h in CONDITIONS]

    def commutation(rng):
        p = random_predicate(alphabet, rng)
        return [check_commute(names, first, second, p) for names, first, second in COMMUTING]

    def monotonicity(rng):
        weaker, stronger = sample_pair(alphabet, rng)
        return [check_monotone(name, h, weaker, stronger) for name, h in CONDITIONS]

    def r_is_r1(rng):
        return [check_R_is_R1(random_predicate(alphabet, rng))]

    def contribution(rng):
        return [check_contribution(random_predicate(alphabet, rng))]

    def sequential(rng):
        return [check_seq_contribution(sample_healthy(R1_R2c, alphabet, rng), sample_healthy(R1_R2c, alphabet, rng))]

    def closures(rng):
        return check_closures(sample_healthy(R, alphabet, rng), sample_healthy(R, alphabet, rng))

    def lattice(rng):
        return check_lattice(sample_set(R, alphabet, rng))

    return {
        "idempotence": idempotence,
        "commutation": commutation,
        "monotonicity": monotonicity,
        "R1 of R": r_is_r1,
        "trace contribution": contribution,
        "sequential contribution": sequential,
        "sequential closures": closures,
        "complete lattice": lattice,
    }


def run_theory_suite(alphabet: Alphabet, samples: int, seed: int) -> List[TheoryReport]:
    """Idempotence, commutation, monotonicity, trace contribution, closures and lattice bounds."""
    reports: List[TheoryReport] = []
    for name, check in _theory_checks(alphabet).items():
        reports += run_sampled(name, check, samples, seed)
    return reports


def run_quantale_suite(alphabet: Alphabet, samples: int, seed: int) -> List[TheoryReport]:
    def quantale(rng):
        predicates = sample_set(R, alphabet, rng)
        return check_quantale(predicates, sample_healthy(R, alphabet, rng), sample_healthy(R, alphabet, rng))

    return run_sampled("quantale", quantale, samples, seed)


def _atoms(alphabet: Alphabet) -> List[np.ndarray]:
    universe = UniverseFactory.get_universe(alphabet)
    atoms = []
    for variable in alphabet.variables:
        codes = universe.codes(variable.name)
        atoms += [codes == code for code in range(variable.domain.size)]
    atoms.append(trace_grows(alphabet))
    atoms.append(universe.codes(TR) == universe.codes(primed(TR)))
    atoms.append(universe.codes(WAIT) == universe.codes(primed(WAIT)))
    return atoms


def micro_family(alphabet: Alphabet) -> Iterator[Predicate]:
    """
    Distinct predicates of the form (l₁ ∧ l₂) ∨ (l₃ ∧ l₄) over literals:
    variable-equals-value, tr ≤ tr′, tr′ = tr, wait′ = wait and their negations.
    """
    atoms = _atoms(alphabet)
    literals = atoms + [~a for a in atoms]
    conjunctions: Dict[bytes, np.ndarray] = {}
    for first, second in itertools.combinations_with_replacement(literals, 2):
        mask = first & second
        conjunctions.setdefault(np.packbits(mask).tobytes(), mask)
    seen = set()
    for first, second in itertools.combinations_with_replacement(list(conjunctions.values()), 2):
        mask = first | second
        key = np.packbits(mask).tobytes()
        if key not in seen:
            seen.add(key)
            yield Predicate(alphabet, mask)


def run_micro_tier(alphabet: Alphabet) -> List[TheoryReport]:
    """R idempotence and the trace-contribution equality over the whole micro family."""
    idempotent = contribution = None
    cases = 0
    for p in micro_family(alphabet):
        cases += 1
        if idempotent is None or idempotent.verified:
            idempotent = check_idempotent("R", R, p)
        if contribution is None or contribution.verified:
            contribution = check_contribution(p)
    log.info("micro tier checked {} predicates", cases)
    return [
        report.model_copy(update={"theorem": f"{report.theorem} (exhaustive family)", "cases": cases})
        for report in (idempotent, contribution)
        if report is not None
    ]
