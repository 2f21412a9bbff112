import pytest

from app.core.models import EventSeq
from app.core.parallel import (
    R2m,
    Rm,
    check_parallel_closure,
    interleavings,
    make_interleave_merge,
    merge_alphabet,
    par_by_merge,
    random_merge,
    run_parallel_suite,
    sep,
    swap_indices,
)
from app.core.parallel.closure import check_interleave_example, extends_by, interleave_oracle
from app.core.reactive import R, is_healthy
from app.core.reactive.sampling import sample_healthy
from app.core.relations import Predicate, refines
from app.core.relations.exceptions import AlphabetMismatch


@pytest.fixture(scope="module")
def merged(small):
    return merge_alphabet(small)


@pytest.fixture(scope="module")
def interleave(merged):
    return make_interleave_merge(merged)


def test_merge_alphabet_layout(small, merged):
    assert merged.names == ("wait", "tr", "0.wait", "0.tr", "1.wait", "1.tr", "wait'", "tr'")
    assert merged.size == 14**4


def test_interleavings():
    shuffles = interleavings(EventSeq.of("a", "b"), EventSeq.of("c"))

    assert shuffles == {EventSeq.of("c", "a", "b"), EventSeq.of("a", "c", "b"), EventSeq.of("a", "b", "c")}
    assert interleavings(EventSeq(), EventSeq.of("a")) == {EventSeq.of("a")}


def test_separation_rehouses_the_after_state(small):
    p = extends_by(small, "a")
    left, right = sep(p, 0), sep(p, 1)

    assert left.count == p.count * 14 * 14
    assert left == swap_indices(right)
    with pytest.raises(ValueError):
        sep(p, 2)


def test_interleaving_example(small, interleave):
    report = check_interleave_example(small)
    composed = par_by_merge(extends_by(small, "a"), interleave, extends_by(small, "b"))
    shuffled = interleave_oracle(small, EventSeq.of("a"), EventSeq.of("b"))

    assert report.verified
    assert {r["tr'"] for r in composed.rows() if not r["wait"] and r["tr"] == EventSeq()} == {
        EventSeq.of("a", "b"),
        EventSeq.of("b", "a"),
    }
    assert refines(composed, shuffled)


def test_interleaving_merge_is_rm_healthy(interleave):
    assert is_healthy(Rm, interleave)
    assert is_healthy(R2m, interleave)


def test_parallel_composition_is_symmetric(small, merged, interleave, rng):
    for _ in range(3):
        p, q = sample_healthy(R, small, rng), sample_healthy(R, small, rng)
        for m in (interleave, random_merge(merged, rng)):
            assert par_by_merge(p, m, q) == par_by_merge(q, swap_indices(m), p)


def test_false_is_a_zero(small, interleave, rng):
    q = sample_healthy(R, small, rng)

    assert par_by_merge(Predicate.false(small), interleave, q) == Predicate.false(small)
    assert par_by_merge(q, interleave, Predicate.false(small)) == Predicate.false(small)


def test_closure_under_healthy_merges(small, merged, rng):
    for _ in range(3):
        p, q = sample_healthy(R, small, rng), sample_healthy(R, small, rng)
        report = check_parallel_closure(p, q, random_merge(merged, rng))
        assert report.verified, report


def test_unhealthy_merge_fails_the_precondition(small, merged, rng):
    p, q = sample_healthy(R, small, rng), sample_healthy(R, small, rng)
    report = check_parallel_closure(p, q, Predicate.true(merged))

    assert report.precondition_failed
    assert report.counterexample.predicate == "M is not healthy here"
    assert report.diagnostic is not None


def test_merge_must_match_the_processes(small, desk, interleave):
    with pytest.raises(AlphabetMismatch):
        par_by_merge(Predicate.false(desk), interleave, Predicate.false(desk))
    with pytest.raises(AlphabetMismatch):
        par_by_merge(Predicate.false(small), interleave, Predicate.false(desk))


def test_parallel_suite(small):
    reports = run_parallel_suite(small, samples=4, seed=42)

    assert reports[0].theorem == "interleaving example"
    assert all(r.verified for r in reports), [r for r in reports if not r.verified]
    assert {"parallel-by-merge closure", "parallel symmetry", "parallel false zero"} <= {r.theorem for r in reports}
