import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from app.config.settings import settings
from app.core.models import EventSeq
from app.core.relations import (
    Alphabet,
    BoolDomain,
    Cat,
    Const,
    EnumDomain,
    Eq,
    Predicate,
    Prefix,
    Var,
    assign,
    check_monotone,
    cond,
    exists,
    function_of,
    gfp,
    independent_of,
    lattice_inf,
    lattice_sup,
    lfp,
    refines,
    seq_comp,
    skip,
    substitute,
)
from app.core.relations.domains import domain_from_json
from app.core.relations.exceptions import (
    AlphabetMismatch,
    ConditionMentionsAfterVars,
    DomainViolation,
    NonMonotoneDetected,
    RelationError,
    UniverseTooLarge,
)
from app.core.relations.universe import Universe, UniverseFactory


def successor():
    return function_of(lambda x: x + 1, ["x"], "x + 1")


def test_bindings_follow_declaration_order(counter):
    assert counter.names == ("x", "x'")
    assert counter.size == 9
    assert Predicate.true(counter).universe.decode(5) == {"x": 1, "x'": 2}


def test_assignments_compose(counter):
    composed = seq_comp(assign(counter, "x", 1), assign(counter, "x", successor()))

    assert composed == assign(counter, "x", 2)
    assert composed.count == 3


def test_assignment_outside_the_domain_drops_rows(counter):
    increment = assign(counter, "x", successor())

    assert increment.count == 2
    assert {row["x"] for row in increment.rows()} == {0, 1}


def test_skip_is_a_unit_of_composition(counter):
    p = assign(counter, "x", successor())

    assert seq_comp(skip(counter), p) == p
    assert seq_comp(p, skip(counter)) == p


def test_assigning_an_after_variable_fails(counter):
    with pytest.raises(RelationError):
        assign(counter, "x'", 0)
    with pytest.raises(RelationError):
        assign(counter, "x", Var("x'"))


def test_fixed_points_of_conjunction_and_disjunction(counter):
    p = Predicate.where(counter, Eq(Var("x"), Const(1)))
    true, false = Predicate.true(counter), Predicate.false(counter)

    assert lfp(lambda x: x & p, counter) == p
    assert gfp(lambda x: x & p, counter) == false
    assert gfp(lambda x: x | p, counter) == p
    assert lfp(lambda x: x | p, counter) == true


def test_non_monotone_functions_are_detected(counter):
    p = Predicate.where(counter, Eq(Var("x"), Const(1)))
    pairs = [(Predicate.true(counter), p)]

    with pytest.raises(NonMonotoneDetected):
        check_monotone(lambda x: ~x, pairs)
    with pytest.raises(NonMonotoneDetected):
        lfp(lambda x: ~x, counter)


def test_exists_forgets_a_variable(counter):
    p = assign(counter, "x", 2)
    forgotten = exists("x", p)

    assert independent_of(forgotten, ["x"])
    assert forgotten.count == 3
    assert exists(["x", "x'"], p) == Predicate.true(counter)


def test_substitution_reads_the_original_binding(counter):
    p = Predicate.where(counter, Eq(Var("x'"), successor()))

    assert substitute(p, {"x": 0}) == Predicate.where(counter, Eq(Var("x'"), Const(1)))
    with pytest.raises(DomainViolation):
        substitute(p, {"x": 5})


def test_simultaneous_substitution_swaps():
    alphabet = Alphabet({"x": BoolDomain(), "y": BoolDomain()})
    p = Predicate.where(alphabet, Var("x"))

    assert substitute(p, {"x": Var("y"), "y": Var("x")}) == Predicate.where(alphabet, Var("y"))


def test_conditional_needs_a_before_state_guard(counter):
    p, q = assign(counter, "x", 0), assign(counter, "x", 2)
    guard = Predicate.where(counter, Eq(Var("x"), Const(1)))

    chosen = cond(p, guard, q)
    assert {row["x'"] for row in chosen.rows() if row["x"] == 1} == {0}
    with pytest.raises(ConditionMentionsAfterVars):
        cond(p, Predicate.where(counter, Eq(Var("x'"), Const(1))), q)


def test_operands_must_share_an_alphabet(counter):
    other = Alphabet({"y": EnumDomain([0, 1, 2])})

    with pytest.raises(AlphabetMismatch):
        Predicate.true(counter) & Predicate.true(other)
    with pytest.raises(AlphabetMismatch):
        refines(Predicate.true(counter), Predicate.true(other))


def test_lattice_of_nothing(counter):
    assert lattice_inf([], counter) == Predicate.true(counter)
    assert lattice_sup([], counter) == Predicate.false(counter)
    with pytest.raises(RelationError):
        lattice_inf([])


def test_lattice_bounds(counter):
    p, q = assign(counter, "x", 0), assign(counter, "x", 1)
    inf, sup = lattice_inf([p, q]), lattice_sup([p, q])

    assert refines(inf, p) and refines(inf, q)
    assert refines(p, sup) and refines(q, sup)


def test_trace_terms(small):
    model = small.trace_model
    extends_by_a = Predicate.where(small, Eq(Var("tr'"), Cat(Var("tr"), Const(EventSeq.of("a")))))
    grows = Predicate.where(small, Prefix(Var("tr"), Var("tr'")))

    assert refines(grows, extends_by_a)
    # traces shorter than the bound, wait and wait' free
    assert extends_by_a.count == 3 * 2 * 2
    assert all(model.prefix(row["tr"], row["tr'"]) for row in grows.rows())


def test_summaries_count_values(counter):
    summary = assign(counter, "x", 1).summarise()

    assert summary.rows == 3
    assert summary.universe == 9
    after = next(v for v in summary.variables if v.name == "x'")
    assert [(c.value, c.count, c.percentage) for c in after.values] == [("1", 3, 100.0)]


def test_frames_index_rows(counter):
    frame = assign(counter, "x", 0).to_frame()

    assert list(frame.columns) == ["x", "x'"]
    assert list(frame.index) == [0, 3, 6]


def test_from_rows_and_functions_agree(counter):
    rows = [{"x": 0, "x'": 1}, {"x": 2, "x'": 2}]
    by_rows = Predicate.from_rows(counter, rows)
    by_function = Predicate.from_function(counter, lambda b: b in rows)

    assert by_rows == by_function
    with pytest.raises(DomainViolation):
        Predicate.from_rows(counter, [{"x": 3, "x'": 0}])


def test_universe_size_is_capped(counter, monkeypatch):
    monkeypatch.setattr(settings, "MAX_BINDINGS", 4)
    with pytest.raises(UniverseTooLarge):
        Universe(counter)


def test_universe_cache_drops_the_least_recently_used(counter, small, monkeypatch):
    monkeypatch.setattr(settings, "UNIVERSE_CACHE_SIZE", 1)
    UniverseFactory.clear_instances()
    first = UniverseFactory.get_universe(counter)

    assert UniverseFactory.get_universe(counter) is first
    UniverseFactory.get_universe(small)
    assert UniverseFactory.cached() == 1
    assert UniverseFactory.get_universe(counter) is not first


def test_domain_declarations():
    assert domain_from_json("bool") == BoolDomain()
    assert domain_from_json({"enum": [0, 1]}).values == (0, 1)
    with pytest.raises(RelationError):
        domain_from_json("int")


@given(st.lists(st.booleans(), min_size=16, max_size=16), st.lists(st.booleans(), min_size=16, max_size=16))
@hsettings(max_examples=50)
def test_predicate_algebra_laws(micro, left, right):
    p, q = Predicate(micro, np.array(left)), Predicate(micro, np.array(right))

    assert ~(p & q) == ~p | ~q
    assert refines(p | q, p)
    assert refines(p, p & q)
    assert exists("tr'", exists("tr", p)) == exists(["tr", "tr'"], p)
