"""
Seeded random predicates and the harness that runs theorem checks over them.

Every check draws from its own seed sequence, derived from the master seed and
the check's name, so a report does not depend on which other checks ran or on
the order in which worker threads finish.
"""
import zlib
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Sequence, Tuple, Union

import numpy as np

from app.config.settings import settings
from app.core.relations import Alphabet, Predicate
from app.core.reactive.healthiness import Healthiness
from app.core.reactive.types import TheoryReport
from app.utils.logger import logger

log = logger("app.core.reactive.sampling")

DENSITIES = (0.02, 0.1, 0.3, 0.6, 0.9)

SampledCheck = Callable[[np.random.Generator], Union[TheoryReport, Sequence[TheoryReport]]]


def random_predicate(alphabet: Alphabet, rng: np.random.Generator) -> Predicate:
    density = DENSITIES[int(rng.integers(len(DENSITIES)))]
    return Predicate(alphabet, rng.random(alphabet.size) < density)


def sample_healthy(condition: Healthiness, alphabet: Alphabet, rng: np.random.Generator) -> Predicate:
    return condition(random_predicate(alphabet, rng))


def sample_pair(alphabet: Alphabet, rng: np.random.Generator) -> Tuple[Predicate, Predicate]:
    """(P, Q) with P ⊑ Q."""
    weaker = random_predicate(alphabet, rng)
    return weaker, weaker & random_predicate(alphabet, rng)


def sample_set(condition: Healthiness, alphabet: Alphabet, rng: np.random.Generator, max_size: int = 3) -> List[Predicate]:
    return [sample_healthy(condition, alphabet, rng) for _ in range(int(rng.integers(1, max_size + 1)))]


def check_seeds(name: str, seed: int, samples: int) -> List[np.random.SeedSequence]:
    return np.random.SeedSequence([seed, zlib.crc32(name.encode("utf-8"))]).spawn(samples)


def _aggregate(results: List[List[TheoryReport]], samples: int) -> List[TheoryReport]:
    merged: Dict[str, TheoryReport] = {}
    for reports in results:
        for report in reports:
            current = merged.get(report.theorem)
            if current is None or (current.verified and not report.verified):
                merged[report.theorem] = report.model_copy(update={"cases": samples})
    return list(merged.values())


def run_sampled(name: str, check: SampledCheck, samples: int, seed: int) -> List[TheoryReport]:
    """Run `check` on `samples` independently seeded generators; one report per theorem."""
    log.info("sampling {}: {} samples, seed {}", name, samples, seed)

    def one(seed_seq: np.random.SeedSequence) -> List[TheoryReport]:
        outcome = check(np.random.default_rng(seed_seq))
        return [outcome] if isinstance(outcome, TheoryReport) else list(outcome)

    with ThreadPoolExecutor(max_workers=max(1, settings.MAX_WORKERS)) as pool:
        results = list(pool.map(one, check_seeds(name, seed, samples)))
    reports = _aggregate(results, samples)
    for report in reports:
        if not report.verified:
            log.warning("{} not verified: {}", report.theorem, report.counterexample)
    return reports
