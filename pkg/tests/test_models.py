from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from app.core.algebra.exceptions import InvalidTrace, OutOfDomain, VariableSetMismatch
from app.core.models import (
    EventSeq,
    EventSeqModel,
    Poly,
    RationalModel,
    Segment,
    TimedTrace,
    TimedTraceModel,
    encode_value,
    format_rat,
    get_model,
    nonneg_rat,
)
from app.core.models.timed import (
    PartialTrace,
    concat_as_union,
    pointwise_eq,
    sample_points,
    tt_at,
    tt_closure_check,
    tt_concat,
    tt_prefix,
    tt_shift,
    tt_subtract,
    well_formed,
)
from app.core.models.timed_laws import check_timed_laws

rationals = st.fractions(min_value=0, max_value=10, max_denominator=12)


def ramp(duration, start=0, slope=1, name="x"):
    return Segment.of(duration, {name: Poly.of(start, slope)})


# sequences

def test_sequence_subtraction_of_a_non_prefix_is_empty(seq_model):
    assert seq_model.subtract(EventSeq.of("a", "b"), EventSeq.of("b")) == EventSeq()
    assert seq_model.subtract(EventSeq.of("a", "b"), EventSeq.of("a")) == EventSeq.of("b")


def test_sequence_enumeration_is_in_length_order(seq_model):
    values = list(seq_model.enumerate(2))

    assert len(values) == 7
    assert [len(v) for v in values] == sorted(len(v) for v in values)


def test_sequence_json_rejects_unknown_events(seq_model):
    assert seq_model.from_json(["a", "b"]) == EventSeq.of("a", "b")
    with pytest.raises(InvalidTrace):
        seq_model.from_json(["c"])


def test_sequence_shrink_candidates_are_smaller(seq_model):
    x = EventSeq.of("b", "a", "b")
    assert all(len(c) < len(x) or c < x for c in seq_model.shrink(x))


# rationals

def test_rational_parsing():
    assert nonneg_rat("3/6") == Fraction(1, 2)
    assert format_rat(Fraction(2)) == "2/1"
    with pytest.raises(InvalidTrace):
        nonneg_rat("-1/2")
    with pytest.raises(InvalidTrace):
        nonneg_rat("1/0")


def test_rational_grid_enumeration():
    assert list(RationalModel(grid_step=Fraction(1, 2)).enumerate(2)) == [0, Fraction(1, 2), 1]


@given(rationals, rationals)
def test_rational_prefix_is_less_or_equal(x, y):
    model = RationalModel()
    assert model.prefix(x, y) == (x <= y)
    assert model.subtract(model.concat(x, y), x) == y


def test_rational_json_wants_strings(rat_model):
    assert rat_model.from_json("3/4") == Fraction(3, 4)
    with pytest.raises(InvalidTrace):
        rat_model.from_json(0.75)


# polynomials

def test_polynomial_shift_and_evaluation():
    p = Poly.of(1, 0, 1)  # 1 + t²

    assert p(3) == 10
    assert p.shift(2) == Poly.of(5, 4, 1)
    assert Poly.of(3, 0, 0).degree == 0


@given(rationals, rationals)
def test_polynomial_shift_is_translation(d, t):
    p = Poly.of(Fraction(1, 3), -2, 5)
    assert p.shift(d)(t) == p(t + d)


# timed traces

def test_concatenation_merges_continuing_segments():
    joined = tt_concat(TimedTrace((ramp(1),)), TimedTrace((ramp(1, start=1),)))

    assert joined.segments == (ramp(2),)
    assert joined.end == 2


def test_concatenation_keeps_a_jump():
    joined = tt_concat(TimedTrace((ramp(1),)), TimedTrace((ramp(1, start=5),)))

    assert len(joined.segments) == 2
    assert tt_at(joined, Fraction(3, 2)) == {"x": Fraction(11, 2)}


def test_prefix_and_subtraction_cut_inside_a_segment():
    y = TimedTrace((ramp(2),))
    x = TimedTrace((ramp(1),))

    assert tt_prefix(x, y)
    assert tt_subtract(y, x) == TimedTrace((ramp(1, start=1),))
    assert not tt_prefix(y, x)
    assert tt_subtract(x, y) == TimedTrace()


def test_sampling_outside_the_domain_fails():
    with pytest.raises(OutOfDomain):
        tt_at(TimedTrace((ramp(1),)), 1)


def test_concatenating_different_variables_fails():
    with pytest.raises(VariableSetMismatch):
        tt_concat(TimedTrace((ramp(1),)), TimedTrace((ramp(1, name="y"),)))


def test_pointwise_equality_ignores_segmentation():
    split = TimedTrace((ramp(Fraction(1, 2)), ramp(Fraction(1, 2), start=Fraction(1, 2))))

    assert not well_formed(split.segments)
    assert pointwise_eq(split, TimedTrace((ramp(1),)))
    assert not pointwise_eq(TimedTrace((ramp(1),)), TimedTrace((ramp(1, slope=2),)))


def flat(duration, name="x"):
    return Segment.of(duration, {name: Poly()})


def test_zero_valued_traces_compare_pointwise():
    zero = TimedTrace.canonical([flat(1)])

    assert pointwise_eq(zero, zero)
    assert pointwise_eq(zero, TimedTrace((flat(Fraction(1, 2)), flat(Fraction(1, 2)))))
    assert not pointwise_eq(zero, TimedTrace((Segment.of(1, {"x": Poly.constant(1)}),)))
    assert not pointwise_eq(zero, TimedTrace((ramp(1),)))


def test_zero_polynomial_samples_like_a_constant():
    mixed = Segment.of(1, {"x": Poly(), "y": Poly.constant(3)})

    assert Poly().degree == -1
    assert mixed.max_degree == 0
    assert flat(1).max_degree == 0
    assert sample_points([Fraction(0), Fraction(1)], 0) == [Fraction(0)]
    assert pointwise_eq(TimedTrace((mixed,)), TimedTrace.canonical([mixed]))


def test_concatenation_is_the_shifted_union():
    f, g = TimedTrace((ramp(1),)), TimedTrace((ramp(Fraction(1, 2), start=7),))
    union = concat_as_union(f, g)
    fg = tt_concat(f, g)

    for t in (0, Fraction(1, 2), 1, Fraction(5, 4)):
        assert union.at(t) == tt_at(fg, t)
    assert union.at(2) is None


def test_shift_composes():
    f = TimedTrace((ramp(1),))
    assert tt_shift(f, 1).shift(2).at(Fraction(7, 2)) == tt_shift(f, 3).at(Fraction(7, 2))
    assert PartialTrace().at(0) is None


def test_closure_check_on_valid_traces():
    assert tt_closure_check(TimedTrace((ramp(1),)), TimedTrace((ramp(1, start=1),)))


def test_timed_json_round_trip_is_canonical(timed_model):
    data = {
        "vars": ["x"],
        "segments": [
            {"duration": "1/2", "valuation": {"x": ["0", "1"]}},
            {"duration": "1/2", "valuation": {"x": ["1/2", "1"]}},
        ],
    }
    trace = timed_model.from_json(data)

    assert trace.segments == (ramp(1),)
    assert timed_model.from_json(timed_model.to_json(trace)) == trace


def test_timed_json_rejects_zero_durations(timed_model):
    with pytest.raises(InvalidTrace):
        timed_model.from_json({"vars": ["x"], "segments": [{"duration": "0", "valuation": {"x": []}}]})


@pytest.mark.parametrize(
    "segment",
    [{"duration": "1"}, {"valuation": {"x": []}}, {"duration": "1", "valuation": ["x"]}, ["1", {"x": []}]],
)
def test_timed_json_rejects_malformed_segments(timed_model, segment):
    with pytest.raises(InvalidTrace):
        timed_model.from_json({"vars": ["x"], "segments": [segment]})


def test_discrete_variables_must_be_constant():
    model = TimedTraceModel(variables=("x", "mode"), discrete=("mode",))
    trace = TimedTrace((Segment.of(1, {"x": Poly.of(0, 1), "mode": Poly.of(0, 1)}),))

    assert not model.validate(trace)


def test_timed_trace_checks_pass(timed_model):
    reports = check_timed_laws(timed_model, count=300, seed=9)

    assert [r.law for r in reports] == ["T1", "T2", "T3", "T4", "CLOSURE", "CANONICAL-ORACLE", "ASSOCIATIVITY"]
    assert all(r.passed for r in reports), [r for r in reports if not r.passed]


def test_timed_trace_checks_pass_on_all_zero_traces():
    model = TimedTraceModel(variables=("x", "y"), coefficient_range=(0, 0))
    reports = check_timed_laws(model, count=100, seed=3)

    assert all(r.passed for r in reports), [r for r in reports if not r.passed]


# registry and interchange

def test_model_registry():
    assert isinstance(get_model("seq", events=("a",)), EventSeqModel)
    assert get_model("rat", grid_step=Fraction(1, 3)).grid_step == Fraction(1, 3)
    with pytest.raises(InvalidTrace):
        get_model("ternary")


def test_encode_value_uses_interchange_formats(seq_model):
    assert encode_value(EventSeq.of("a"), seq_model) == ["a"]
    assert encode_value(Fraction(1, 2)) == "1/2"
    assert encode_value(True) is True
