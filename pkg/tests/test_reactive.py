import pytest

from app.core.models import EventSeq
from app.core.reactive import (
    R,
    R1,
    R2c,
    R3,
    check_closures,
    check_quantale,
    check_seq_contribution,
    contribution_form,
    healthiness,
    is_healthy,
    reactive_alphabet,
    sequential_contribution,
    theory_inf,
    theory_sup,
)
from app.core.reactive.exceptions import EmptySet, NotReactiveAlphabet, UnhealthyMember, UnknownHealthiness
from app.core.reactive.sampling import random_predicate, sample_healthy, sample_set
from app.core.reactive.suites import micro_family, run_micro_tier, run_quantale_suite, run_theory_suite
from app.core.reactive.theory import check_lattice
from app.core.reactive.types import TheoryReport
from app.core.relations import BoolDomain, Cat, Const, Eq, Predicate, Prefix, Var, lattice_sup, refines, seq_comp, skip


def event(alphabet, name):
    """tr′ = tr ⌢ ⟨name⟩ with everything else unconstrained."""
    return Predicate.where(alphabet, Eq(Var("tr'"), Cat(Var("tr"), Const(EventSeq.of(name)))))


@pytest.mark.parametrize("condition", [R1, R2c, R3, R])
def test_healthiness_is_idempotent(desk, rng, condition):
    for _ in range(10):
        p = random_predicate(desk, rng)
        assert is_healthy(condition, condition(p))


def test_healthiness_conditions_commute(desk, rng):
    for _ in range(10):
        p = random_predicate(desk, rng)
        assert R1(R2c(p)) == R2c(R1(p))
        assert R1(R3(p)) == R3(R1(p))
        assert R2c(R3(p)) == R3(R2c(p))


def test_r1_keeps_growing_traces(small):
    p = R1(Predicate.true(small))

    assert p == Predicate.where(small, Prefix(Var("tr"), Var("tr'")))


def test_r2c_makes_behaviour_history_independent(small):
    assert is_healthy(R2c, event(small, "a"))

    # tr′ = ⟨a⟩ read as a contribution from any history
    literal = Predicate.where(small, Eq(Var("tr'"), Const(EventSeq.of("a"))))
    assert not is_healthy(R2c, literal)
    assert R1(R2c(literal)) == event(small, "a")


def test_r_of_false_is_waiting_skip(desk):
    wait = Predicate.where(desk, Var("wait"))

    assert R(Predicate.false(desk)) == skip(desk) & wait


def test_contribution_form_equals_r1_r2c(desk, rng):
    for _ in range(10):
        p = random_predicate(desk, rng)
        assert contribution_form(p) == R1(R2c(p))


def test_sequential_contribution(small):
    a, b = event(small, "a"), event(small, "b")

    assert check_seq_contribution(a, b).verified
    assert sequential_contribution(a, b) == seq_comp(a, b)
    both = Predicate.where(small, Eq(Var("tr'"), Cat(Var("tr"), Const(EventSeq.of("a", "b")))))
    assert seq_comp(a, b) == both


def test_sequential_contribution_requires_healthy_inputs(small):
    unhealthy = Predicate.where(small, Eq(Var("tr'"), Const(EventSeq.of("a"))))
    report = check_seq_contribution(unhealthy, event(small, "b"))

    assert report.precondition_failed
    assert not report.verified
    assert report.counterexample.predicate == "P under R1∘R2c is not healthy here"


def test_sequential_composition_preserves_health(desk, rng):
    for _ in range(5):
        reports = check_closures(sample_healthy(R, desk, rng), sample_healthy(R, desk, rng))
        assert [r.theorem for r in reports] == ["R1-R2c sequential closure", "R3 sequential closure", "R sequential closure"]
        assert all(r.verified for r in reports)


def test_theory_lattice(desk, rng):
    for _ in range(5):
        members = sample_set(R, desk, rng)
        inf, sup = theory_inf(members), theory_sup(members)

        assert is_healthy(R, inf) and is_healthy(R, sup)
        assert all(refines(inf, m) and refines(m, sup) for m in members)
        assert all(r.verified for r in check_lattice(members))


def test_theory_supremum_is_least(small, rng):
    members = sample_set(R, small, rng)
    sup = theory_sup(members)
    bound = lattice_sup(members)

    # every healthy upper bound of the members lies above the supremum
    for _ in range(20):
        candidate = R(random_predicate(small, rng) & bound)
        if refines(bound, candidate):
            assert refines(sup, candidate)


def test_empty_lattice(desk):
    assert theory_inf([], desk) == R(Predicate.true(desk))
    assert theory_sup([], desk) == R(Predicate.false(desk))


def test_lattice_rejects_unhealthy_members(desk):
    with pytest.raises(UnhealthyMember):
        theory_inf([Predicate.true(desk)])


def test_quantale(desk, rng):
    members = sample_set(R, desk, rng)
    reports = check_quantale(members, sample_healthy(R, desk, rng), sample_healthy(R, desk, rng))

    assert [r.theorem for r in reports] == ["Q1 left distributivity", "Q2 right distributivity", "Q3 unit"]
    assert all(r.verified for r in reports)
    with pytest.raises(EmptySet):
        check_quantale([], R(Predicate.true(desk)), R(Predicate.true(desk)))


def test_quantale_reports_unhealthy_inputs(desk):
    reports = check_quantale([R(Predicate.true(desk))], Predicate.true(desk), R(Predicate.true(desk)))

    assert all(r.precondition_failed for r in reports)


def test_theory_suite_verifies_everything(desk):
    reports = run_theory_suite(desk, samples=15, seed=42)

    assert len({r.theorem for r in reports}) == len(reports)
    assert all(r.verified for r in reports), [r for r in reports if not r.verified]
    assert all(r.cases == 15 for r in reports)


def test_theory_suite_is_reproducible(small):
    assert run_theory_suite(small, samples=10, seed=1) == run_theory_suite(small, samples=10, seed=1)


def test_quantale_suite(small):
    assert all(r.verified for r in run_quantale_suite(small, samples=10, seed=3))


def test_micro_tier(micro):
    family = list(micro_family(micro))
    reports = run_micro_tier(micro)

    assert len({p.mask.tobytes() for p in family}) == len(family)
    assert len(family) >= 1000
    assert [r.theorem for r in reports] == ["R idempotent (exhaustive family)", "R1-R2c trace contribution (exhaustive family)"]
    assert all(r.verified and r.cases == len(family) for r in reports)


def test_reactive_alphabets(desk, counter):
    assert desk.names == ("wait", "tr", "v", "wait'", "tr'", "v'")
    assert desk.size == 784
    with pytest.raises(NotReactiveAlphabet):
        R1(Predicate.true(counter))
    with pytest.raises(NotReactiveAlphabet):
        reactive_alphabet(desk.domain("tr"), {"wait": BoolDomain()})


def test_healthiness_lookup():
    assert healthiness("R2c") is R2c
    with pytest.raises(UnknownHealthiness):
        healthiness("R2")


def test_reports_are_consistent():
    with pytest.raises(ValueError):
        TheoryReport(theorem="t", verified=True, precondition_failed=True)
