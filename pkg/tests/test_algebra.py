from typing import Any, Iterator

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from app.core.algebra.base import TraceModel
from app.core.algebra.exceptions import GeneratorError
from app.core.algebra.laws import LAWS, check_descriptor, check_laws
from app.core.algebra.types import ExhaustiveMode, LawReport, RandomizedMode
from app.core.models import EventSeq, EventSeqModel, TimedTraceModel

LAW_NAMES = [
    "TA1", "TA2", "TA3", "TA4", "TA5", "TP1", "TP2", "TP3", "TP4",
    "TS1", "TS2", "TS3", "TS4", "TS5", "TS6", "TS7", "TS8",
]

sequences = st.lists(st.sampled_from("ab"), max_size=4).map(lambda items: EventSeq(tuple(items)))


class SignedIntegers(TraceModel[int]):
    """Integers under addition: a cancellative monoid that has inverses."""

    name = "signed"

    def concat(self, x: int, y: int) -> int:
        return x + y

    def empty(self) -> int:
        return 0

    def prefix(self, x: int, y: int) -> bool:
        return True

    def subtract(self, y: int, x: int) -> int:
        return y - x

    def generate(self, rng: np.random.Generator) -> int:
        return int(rng.integers(-3, 4))

    def enumerate(self, bound: int) -> Iterator[int]:
        yield 0
        for k in range(1, bound + 1):
            yield k
            yield -k

    def size(self, x: int) -> Any:
        return abs(x)

    def is_trace(self, value: Any) -> bool:
        return isinstance(value, int)


def test_seventeen_laws_hold_exhaustively_for_sequences(seq_model):
    reports = check_laws(seq_model, ExhaustiveMode(bound=3))

    assert [r.law for r in reports] == LAW_NAMES
    assert all(r.passed for r in reports)
    # 15 sequences of length ≤ 3 over {a, b}
    assert next(r for r in reports if r.law == "TA1").cases == 15**3


def test_laws_hold_on_random_rationals(rat_model):
    reports = check_laws(rat_model, RandomizedMode(count=500, seed=3))

    assert len(reports) == 17
    assert all(r.passed and r.cases == 500 for r in reports)


def test_laws_hold_on_random_timed_traces():
    reports = check_laws(TimedTraceModel(variables=("x", "y")), RandomizedMode(count=200, seed=11))

    assert all(r.passed for r in reports), [r for r in reports if not r.passed]


def test_descriptor_agrees_with_subtraction(seq_model, rat_model):
    assert check_descriptor(seq_model, ExhaustiveMode(bound=3)).passed
    assert check_descriptor(rat_model, RandomizedMode(count=300, seed=5)).passed


def test_signed_integers_refute_no_inverses():
    reports = {r.law: r for r in check_laws(SignedIntegers(), ExhaustiveMode(bound=1))}

    assert not reports["TA5"].passed
    assert reports["TA5"].counterexample == [1, -1]
    assert reports["TA1"].passed


def test_randomized_failures_are_shrunk():
    report = next(r for r in check_laws(SignedIntegers(), RandomizedMode(count=200, seed=0)) if r.law == "TA5")

    assert not report.passed
    x, y = report.counterexample
    assert x + y == 0 and x != 0


def test_randomized_runs_are_reproducible(rat_model):
    first = check_laws(rat_model, RandomizedMode(count=100, seed=42))
    second = check_laws(rat_model, RandomizedMode(count=100, seed=42))

    assert first == second


def test_exhaustive_mode_needs_an_enumerator(timed_model):
    with pytest.raises(GeneratorError):
        check_laws(timed_model, ExhaustiveMode(bound=2))


def test_law_report_rejects_a_passing_counterexample():
    with pytest.raises(ValidationError):
        LawReport(law="TA1", cases=1, passed=True, counterexample=[0])


def test_randomized_mode_requires_positive_count():
    with pytest.raises(ValidationError):
        RandomizedMode(count=0, seed=1)


@given(sequences, sequences, sequences)
@settings(max_examples=200)
def test_every_law_holds_on_generated_sequences(x, y, z):
    model = EventSeqModel()
    for law in LAWS:
        assert law.holds(model, *(x, y, z)[: law.arity]), law.name
