from typing import Any, Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from app.core.relations.alphabet import Alphabet, Role, primed
from app.core.relations.exceptions import (
    AlphabetMismatch,
    ConditionMentionsAfterVars,
    DomainViolation,
    NonMonotoneDetected,
    RelationError,
)
from app.core.relations.predicate import Predicate
from app.core.relations.terms import Apply, Term, Var, as_term
from app.core.relations.universe import UniverseFactory
from app.utils.logger import logger

log = logger("app.core.relations.operators")

Transformer = Callable[[Predicate], Predicate]
SubstitutionValue = Union[Term, Callable[[Dict[str, Any]], Any], Any]


def _same_alphabet(operation: str, *predicates: Predicate) -> Alphabet:
    alphabet = predicates[0].alphabet
    for p in predicates[1:]:
        if p.alphabet != alphabet:
            raise AlphabetMismatch(operation, f"{alphabet} vs {p.alphabet}")
    return alphabet


def true_predicate(alphabet: Alphabet) -> Predicate:
    return Predicate.true(alphabet)


def false_predicate(alphabet: Alphabet) -> Predicate:
    return Predicate.false(alphabet)


def conjunction(p: Predicate, q: Predicate) -> Predicate:
    return p & q


def disjunction(p: Predicate, q: Predicate) -> Predicate:
    return p | q


def negation(p: Predicate) -> Predicate:
    return ~p


def implication(p: Predicate, q: Predicate) -> Predicate:
    return ~p | q


def exists(names: Union[str, Iterable[str]], p: Predicate) -> Predicate:
    """∃ names • p, cylindrified back over the full alphabet."""
    names = (names,) if isinstance(names, str) else tuple(names)
    axes = tuple(sorted({p.alphabet.position(n) for n in names}))
    if not axes:
        return p
    shape = p.alphabet.shape
    projected = np.any(p.mask.reshape(shape), axis=axes, keepdims=True)
    return Predicate(p.alphabet, np.broadcast_to(projected, shape).reshape(-1))


def independent_of(p: Predicate, names: Iterable[str]) -> bool:
    """True when p's membership does not depend on any of `names`."""
    return exists(names, p) == p


def _after_names(alphabet: Alphabet) -> Tuple[str, ...]:
    return tuple(v.name for v in alphabet.after)


def ite(b: Predicate, p: Predicate, q: Predicate) -> Predicate:
    """(b ∧ p) ∨ (¬b ∧ q) with no restriction on what b mentions."""
    _same_alphabet("conditional", p, b, q)
    return Predicate(p.alphabet, np.where(b.mask, p.mask, q.mask))


def cond(p: Predicate, b: Predicate, q: Predicate) -> Predicate:
    """p ◁ b ▷ q for a guard over before-variables."""
    _same_alphabet("conditional", p, b, q)
    after = _after_names(b.alphabet)
    constrained = [n for n in after if not independent_of(b, (n,))]
    if constrained:
        raise ConditionMentionsAfterVars(constrained)
    return ite(b, p, q)


def seq_comp(p: Predicate, q: Predicate) -> Predicate:
    """p ; q, matching p's after-state to q's before-state."""
    alphabet = _same_alphabet("sequential composition", p, q)
    if alphabet.inputs:
        raise AlphabetMismatch(
            "sequential composition",
            f"input-only variables {[v.name for v in alphabet.inputs]} have no after-state to match",
        )
    left = p.matrix.astype(np.int32)
    right = q.matrix.astype(np.int32)
    return Predicate(alphabet, (left @ right) > 0)


def _identity_mask(alphabet: Alphabet, excluding: Iterable[str] = ()) -> np.ndarray:
    universe = UniverseFactory.get_universe(alphabet)
    skip_names = set(excluding)
    mask = np.ones(alphabet.size, dtype=bool)
    for variable in alphabet.before:
        if variable.name in skip_names:
            continue
        mask &= universe.codes(variable.name) == universe.codes(primed(variable.name))
    return mask


def skip(alphabet: Alphabet) -> Predicate:
    """II: every primed variable equals its unprimed twin."""
    return Predicate(alphabet, _identity_mask(alphabet))


def assign(alphabet: Alphabet, name: str, expression: Any) -> Predicate:
    """x := e. Bindings where e leaves x's domain are not rows of the result."""
    variable = alphabet.variable(name)
    if variable.role != Role.BEFORE:
        raise RelationError(f"Can only assign to program variables with an after-state, not '{name}'")
    term = as_term(expression)
    alphabet.require(term.variables())
    after = [n for n in term.variables() if alphabet.variable(n).role == Role.AFTER]
    if after:
        raise RelationError(f"Assigned expression must be a function of the before-state, it reads {after}")
    universe = UniverseFactory.get_universe(alphabet)
    target = term.evaluate(universe).in_domain(variable.domain)
    mask = _identity_mask(alphabet, excluding=(name,))
    mask &= universe.codes(primed(name)) == target
    return Predicate(alphabet, mask)


def _as_substitution_term(value: SubstitutionValue, alphabet: Alphabet) -> Term:
    if isinstance(value, Term):
        return value
    if callable(value):
        names = alphabet.names
        return Apply(lambda *values: value(dict(zip(names, values))), tuple(Var(n) for n in names), "binding function")
    return as_term(value)


def substitute_codes(p: Predicate, codes: Mapping[str, np.ndarray]) -> Predicate:
    """p with each named variable replaced by the given per-binding domain codes."""
    for name, column in codes.items():
        if (column < 0).any():
            raise DomainViolation(name, f"{int((column < 0).sum())} bindings substitute a value outside the domain")
    index = UniverseFactory.get_universe(p.alphabet).flat_index(codes)
    return Predicate(p.alphabet, p.mask[index])


def substitute(p: Predicate, substitution: Mapping[str, SubstitutionValue]) -> Predicate:
    """Simultaneous substitution p[e₁,…/x₁,…]; every eᵢ is read from the original binding."""
    alphabet = p.alphabet
    universe = UniverseFactory.get_universe(alphabet)
    codes = {}
    for name, value in substitution.items():
        domain = alphabet.domain(name)
        term = _as_substitution_term(value, alphabet)
        alphabet.require(term.variables())
        codes[name] = term.evaluate(universe).in_domain(domain)
    return substitute_codes(p, codes)


def refines(p: Predicate, q: Predicate) -> bool:
    """p ⊑ q: every row of q is a row of p."""
    _same_alphabet("refinement check", p, q)
    return not bool((q.mask & ~p.mask).any())


def _lattice(operation: str, predicates: Sequence[Predicate], alphabet: Optional[Alphabet]) -> Alphabet:
    if predicates:
        found = _same_alphabet(operation, *predicates)
        if alphabet is not None and alphabet != found:
            raise AlphabetMismatch(operation, f"{alphabet} vs {found}")
        return found
    if alphabet is None:
        raise RelationError(f"{operation} of an empty set needs an alphabet")
    return alphabet


def lattice_inf(predicates: Iterable[Predicate], alphabet: Optional[Alphabet] = None) -> Predicate:
    """⨅ A: union of row sets; the infimum of ∅ is true."""
    predicates = list(predicates)
    alphabet = _lattice("infimum", predicates, alphabet)
    mask = np.zeros(alphabet.size, dtype=bool) if predicates else np.ones(alphabet.size, dtype=bool)
    for p in predicates:
        mask |= p.mask
    return Predicate(alphabet, mask)


def lattice_sup(predicates: Iterable[Predicate], alphabet: Optional[Alphabet] = None) -> Predicate:
    """⨆ A: intersection of row sets; the supremum of ∅ is false."""
    predicates = list(predicates)
    alphabet = _lattice("supremum", predicates, alphabet)
    mask = np.ones(alphabet.size, dtype=bool) if predicates else np.zeros(alphabet.size, dtype=bool)
    for p in predicates:
        mask &= p.mask
    return Predicate(alphabet, mask)


def check_monotone(f: Transformer, pairs: Iterable[Tuple[Predicate, Predicate]], operation: str = "fixed point") -> None:
    """Raise NonMonotoneDetected when some pair p ⊑ q has f(p) ⋢ f(q)."""
    for p, q in pairs:
        if refines(p, q) and not refines(f(p), f(q)):
            raise NonMonotoneDetected(operation, f"{p!r} ⊑ {q!r} but their images are not ordered")


def _iterate(operation: str, f: Transformer, start: Predicate, ascending: bool) -> Predicate:
    current = start
    for step in range(start.alphabet.size + 2):
        following = f(current)
        if following.alphabet != start.alphabet:
            raise AlphabetMismatch(operation, "transformer changed the alphabet")
        if following == current:
            log.debug("{} reached after {} iterations", operation, step)
            return current
        ordered = refines(current, following) if ascending else refines(following, current)
        if not ordered:
            raise NonMonotoneDetected(operation, f"iteration {step} left the ⊑-chain")
        current = following
    raise NonMonotoneDetected(operation, "iteration did not stabilise")


def lfp(f: Transformer, alphabet: Alphabet, samples: Iterable[Tuple[Predicate, Predicate]] = ()) -> Predicate:
    """The ⊑-least fixed point, iterating upward from true."""
    check_monotone(f, samples, "lfp")
    return _iterate("lfp", f, Predicate.true(alphabet), ascending=True)


def gfp(f: Transformer, alphabet: Alphabet, samples: Iterable[Tuple[Predicate, Predicate]] = ()) -> Predicate:
    """The ⊑-greatest fixed point, iterating downward from false."""
    check_monotone(f, samples, "gfp")
    return _iterate("gfp", f, Predicate.false(alphabet), ascending=False)
