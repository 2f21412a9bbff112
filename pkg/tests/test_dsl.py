from fractions import Fraction

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from app.core.dsl import DslError, Evaluator, ParseError, ScopeError, evaluate, expr_to_text, parse, parse_expr, to_text
from app.core.dsl import ast
from app.core.models import EventSeq
from app.core.parallel import make_interleave_merge, merge_alphabet, par_by_merge
from app.core.parallel.closure import extends_by
from app.core.reactive import R, R1, R3
from app.core.relations import Predicate, exists, skip
from app.core.relations.exceptions import DomainViolation


# parsing

def test_parses_healthiness_application():
    assert parse("R1 (tr <= tr')") == ast.Healthy("R1", ast.Compare("<=", ast.VarRef("tr"), ast.VarRef("tr'")))


def test_sequence_binds_loosest():
    assert parse("p ; q <| wait |> r") == ast.Seq(ast.Name("p"), ast.Cond(ast.Name("q"), ast.Name("wait"), ast.Name("r")))


def test_parses_parallel_by_merge():
    assert parse("p || M || q") == ast.Par(ast.Name("p"), ast.Name("M"), ast.Name("q"))


def test_parses_quantifiers_and_substitutions():
    assert parse("exists tr' . tr' = tr") == ast.Exists(("tr'",), ast.Compare("=", ast.VarRef("tr'"), ast.VarRef("tr")))
    assert parse("(tr' = tr ^ <a>)[eps, true / tr, wait]") == ast.Subst(
        ast.Compare("=", ast.VarRef("tr'"), ast.Concat(ast.VarRef("tr"), ast.EventsLit(("a",)))),
        (ast.Eps(), ast.BoolLit(True)),
        ("tr", "wait"),
    )


def test_parses_literals():
    assert parse_expr("<>") == ast.EventsLit(())
    assert parse_expr("3/6") == ast.RatLit(Fraction(1, 2))
    assert parse_expr('"1/3"') == ast.RatLit(Fraction(1, 3))
    assert parse_expr('"idle"') == ast.StrLit("idle")
    assert parse_expr("0.tr - tr") == ast.Minus(ast.VarRef("0.tr"), ast.VarRef("tr"))
    timed = parse_expr('{"vars": ["x"], "segments": []}')
    assert isinstance(timed, ast.TimedLit) and timed.text == '{"segments":[],"vars":["x"]}'


def test_incomplete_formula_reports_end_of_input():
    with pytest.raises(ParseError) as error:
        parse("tr' = tr ^")

    assert "end of input" in str(error.value)
    assert error.value.line == 1


@pytest.mark.parametrize(
    "text",
    ["tr' =", "(tr = tr'", "p[eps / tr, wait]", "x = 1/0", "p $ q", "exists . p", '{"vars": ['],
)
def test_malformed_formulas_are_rejected(text):
    with pytest.raises(ParseError):
        parse(text)


def test_errors_point_at_the_line():
    with pytest.raises(ParseError) as error:
        parse("wait /\\\n  ; tr = tr'")

    assert (error.value.line, error.value.column) == (2, 3)


# printing

names = st.sampled_from(["x", "v", "tr", "tr'", "wait", "0.tr", "1.wait"])

exprs = st.recursive(
    st.one_of(
        names.map(ast.VarRef),
        st.just(ast.Eps()),
        st.lists(st.sampled_from("ab"), max_size=2).map(lambda e: ast.EventsLit(tuple(e))),
        st.fractions(min_value=0, max_value=5, max_denominator=4).map(ast.RatLit),
        st.text(alphabet="abxy0123/.'\\", min_size=1, max_size=4).map(ast.StrLit),
    ),
    lambda inner: st.one_of(
        st.builds(ast.Concat, inner, inner),
        st.builds(ast.Minus, inner, inner),
    ),
    max_leaves=4,
)


def _substitution(body):
    return st.lists(st.tuples(exprs, names), min_size=1, max_size=2).map(
        lambda pairs: ast.Subst(body, tuple(v for v, _ in pairs), tuple(n for _, n in pairs))
    )


formulas = st.recursive(
    st.one_of(
        st.booleans().map(ast.Truth),
        st.just(ast.Skip()),
        names.map(ast.Name),
        st.builds(ast.Compare, st.sampled_from(["=", "!=", "<="]), exprs, exprs),
    ),
    lambda inner: st.one_of(
        st.builds(ast.Not, inner),
        st.builds(ast.And, inner, inner),
        st.builds(ast.Or, inner, inner),
        st.builds(ast.Implies, inner, inner),
        st.builds(ast.Cond, inner, inner, inner),
        st.builds(ast.Seq, inner, inner),
        st.builds(ast.Par, inner, inner, inner),
        st.builds(ast.Healthy, st.sampled_from(ast.HEALTH_KEYWORDS), inner),
        st.builds(ast.Exists, st.lists(names, min_size=1, max_size=2).map(tuple), inner),
        inner.flatmap(_substitution),
    ),
    max_leaves=6,
)


@given(formulas)
@hsettings(max_examples=300)
def test_printed_formulas_parse_back(formula):
    assert parse(to_text(formula)) == formula


@given(exprs)
def test_printed_expressions_parse_back(expr):
    assert parse_expr(expr_to_text(expr)) == expr


def test_strings_that_read_as_rationals_keep_their_type():
    assert expr_to_text(ast.StrLit("1/2")) == "'1/2'"
    assert parse_expr(expr_to_text(ast.StrLit("1/2"))) == ast.StrLit("1/2")
    assert parse_expr('"1/2"') == ast.RatLit(Fraction(1, 2))
    assert parse_expr("'it\\'s'") == ast.StrLit("it's")
    assert expr_to_text(ast.StrLit("idle")) == '"idle"'


def test_printer_uses_few_parentheses():
    assert to_text(parse("((a /\\ b)) \\/ (c)")) == "a /\\ b \\/ c"
    assert to_text(parse("a /\\ (b \\/ c)")) == "a /\\ (b \\/ c)"
    assert to_text(parse("(p ; q) ; r")) == "p ; q ; r"
    assert to_text(parse("p ; (q ; r)")) == "p ; (q ; r)"


# evaluation

def test_extension_matches_a_row_filter(small):
    model = small.trace_model
    p = evaluate("tr' = tr ^ <a>", small)
    oracle = Predicate.from_function(small, lambda b: b["tr'"] == model.concat(b["tr"], EventSeq.of("a")))

    assert p == oracle


def test_r_is_the_composition_of_its_conditions(desk):
    assert evaluate("R (true)", desk) == evaluate("R3 (R2c (R1 (true)))", desk)
    assert evaluate("R true", desk) == R(Predicate.true(desk))


def test_evaluation_is_compositional(desk):
    p = evaluate("tr <= tr'", desk)
    q = evaluate("v' = v", desk)
    env = {"p": p, "q": q}

    assert evaluate("p /\\ q", desk, env) == p & q
    assert evaluate("p \\/ ~q", desk, env) == p | ~q
    assert evaluate("p => q", desk, env) == ~p | q
    assert evaluate("R1 q", desk, env) == R1(q)


def test_booleans_name_themselves(desk):
    assert evaluate("II <| wait |> false", desk) == R3(Predicate.false(desk))
    assert evaluate("II", desk) == skip(desk)
    assert evaluate("v", desk) == evaluate("v = true", desk)


def test_quantifiers_and_substitution(small):
    step = evaluate("tr' = tr ^ <a>", small)

    assert evaluate("exists tr' . tr' = tr ^ <a>", small) == exists("tr'", step)
    assert evaluate("(tr' = tr ^ <a>)[eps / tr]", small) == evaluate("tr' = <a>", small)


def test_unknown_names_are_scope_errors(small):
    with pytest.raises(ScopeError):
        evaluate("z", small)
    with pytest.raises(ScopeError):
        evaluate("exists y . true", small)


def test_trace_literals_must_lie_in_the_universe(small):
    with pytest.raises(DomainViolation):
        evaluate("tr' = <a,a,a>", small)


def test_merge_predicates_get_the_merge_alphabet(small):
    evaluator = Evaluator(small)
    node = parse("Rm (0.tr <= tr')")

    assert evaluator.target_alphabet(node) == merge_alphabet(small)
    assert evaluator.target_alphabet(parse("tr <= tr'")) == small
    assert evaluator.evaluate(node).alphabet == merge_alphabet(small)


def test_parallel_formulas(small):
    merge = make_interleave_merge(merge_alphabet(small))
    step = "tr' = tr ^ <{}> /\\ ~wait'"
    text = f"({step.format('a')}) || M || ({step.format('b')})"

    composed = evaluate(text, small, {"M": merge})
    assert composed == par_by_merge(extends_by(small, "a"), merge, extends_by(small, "b"))


def test_merge_operand_must_be_a_process_formula(small):
    with pytest.raises(DslError):
        evaluate("Rm ((true || true || true) /\\ 0.wait)", small)


def test_trace_terms_need_a_trace_model(counter):
    with pytest.raises(ScopeError):
        evaluate("x = eps", counter)
    assert evaluate("x' = x", counter) == skip(counter)
