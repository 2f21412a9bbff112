from typing import List

from app.core.models.sequences import EventSeq
from app.core.relations import Cat, Const, Eq, Predicate, Var
from app.core.relations.alphabet import Alphabet, primed
from app.core.reactive import R, program_variables, require_reactive
from app.core.reactive.alphabet import TR, WAIT
from app.core.reactive.healthiness import R1, waiting
from app.core.reactive.reports import compare, precondition_failed
from app.core.reactive.sampling import run_sampled, sample_healthy
from app.core.reactive.types import TheoryReport
from app.core.parallel.interleave import interleavings, make_interleave_merge
from app.core.parallel.merge import R2m, Rm, merge_alphabet, par_by_merge, random_merge, swap_indices
from app.utils.logger import logger

log = logger("app.core.parallel.closure")

THEOREM = "parallel-by-merge closure"


def check_parallel_closure(p: Predicate, q: Predicate, m: Predicate) -> TheoryReport:
    """P ∥_M Q is R-healthy when P and Q are R-healthy and M is Rm-healthy."""
    composed = par_by_merge(p, m, q)
    closure = compare(THEOREM, R(composed), composed, "R(P ∥ Q)", "P ∥ Q")
    for name, value, condition in (("P", p, R), ("Q", q, R), ("M", m, Rm)):
        healthy = condition(value)
        if healthy != value:
            return precondition_failed(THEOREM, value, healthy, name, diagnostic=closure)
    return closure


def extends_by(alphabet: Alphabet, event: str) -> Predicate:
    """A terminating step: tr′ = tr ⌢ ⟨event⟩, wait′ = false and the program state unchanged."""
    p = Predicate.where(alphabet, Eq(Var(primed(TR)), Cat(Var(TR), Const(EventSeq.of(event)))))
    p = p & Predicate.where(alphabet, Eq(Var(primed(WAIT)), Const(False)))
    for name in program_variables(alphabet):
        p = p & Predicate.where(alphabet, Eq(Var(primed(name)), Var(name)))
    return p


def interleave_oracle(alphabet: Alphabet, first: EventSeq, second: EventSeq) -> Predicate:
    """Non-waiting rows whose trace grows by a shuffle of the two contributions."""
    shuffles = interleavings(first, second)
    names = program_variables(alphabet)
    model = require_reactive(alphabet).model

    def accepts(b: dict) -> bool:
        return (
            not b[WAIT]
            and not b[primed(WAIT)]
            and model.prefix(b[TR], b[primed(TR)])
            and model.subtract(b[primed(TR)], b[TR]) in shuffles
            and all(b[primed(n)] == b[n] for n in names)
        )

    return Predicate.from_function(alphabet, accepts)


def check_interleave_example(alphabet: Alphabet) -> TheoryReport:
    """Two single-event steps composed with the interleaving merge give both orders."""
    merge = make_interleave_merge(merge_alphabet(alphabet))
    events = require_reactive(alphabet).model.events
    a, b = events[0], events[1 % len(events)]
    composed = par_by_merge(extends_by(alphabet, a), merge, extends_by(alphabet, b))
    running = composed & Predicate(alphabet, ~waiting(alphabet))
    oracle = interleave_oracle(alphabet, EventSeq.of(a), EventSeq.of(b))
    return compare("interleaving example", running, oracle, "P ∥ Q", "shuffle oracle")


def run_parallel_suite(alphabet: Alphabet, samples: int, seed: int) -> List[TheoryReport]:
    """The worked interleaving example, merge healthiness and the closure theorem on sampled triples."""
    merged = merge_alphabet(alphabet)
    interleave = make_interleave_merge(merged)
    reports = [
        check_interleave_example(alphabet),
        compare("interleaving merge Rm-healthy", Rm(interleave), interleave, "Rm(M)", "M"),
    ]

    def merge_laws(rng):
        m = Predicate(merged, rng.random(merged.size) < 0.3)
        image = R2m(m)
        return [
            compare("R2m idempotent", R2m(image), image, "R2m(R2m(M))", "R2m(M)"),
            compare("R2m commutes with R1", R2m(R1(m)), R1(image), "R2m(R1(M))", "R1(R2m(M))"),
            compare("Rm idempotent", Rm(Rm(m)), Rm(m), "Rm(Rm(M))", "Rm(M)"),
        ]

    def closure(rng):
        p, q = sample_healthy(R, alphabet, rng), sample_healthy(R, alphabet, rng)
        m = random_merge(merged, rng) if rng.random() < 0.75 else interleave
        composed = par_by_merge(p, m, q)
        return [
            check_parallel_closure(p, q, m),
            compare("parallel symmetry", composed, par_by_merge(q, swap_indices(m), p), "P ∥_M Q", "Q ∥_M' P"),
            compare(
                "parallel false zero",
                par_by_merge(Predicate.false(alphabet), m, q),
                Predicate.false(alphabet),
                "false ∥ Q",
                "false",
            ),
        ]

    reports += run_sampled("merge healthiness", merge_laws, samples, seed)
    reports += run_sampled("parallel closure", closure, samples, seed)
    failed = [r.theorem for r in reports if not r.verified]
    log.info("parallel suite: {} reports, {} not verified", len(reports), len(failed))
    return reports
