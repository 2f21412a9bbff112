from app.core.relations.alphabet import Alphabet, Role, Variable, primed, unprimed
from app.core.relations.domains import BoolDomain, Domain, EnumDomain, EventDomain, TraceDomain, domain_from_json
from app.core.relations.operators import (
    assign,
    check_monotone,
    cond,
    conjunction,
    disjunction,
    exists,
    false_predicate,
    gfp,
    implication,
    independent_of,
    ite,
    lattice_inf,
    lattice_sup,
    lfp,
    negation,
    refines,
    seq_comp,
    skip,
    substitute,
    substitute_codes,
    true_predicate,
)
from app.core.relations.predicate import Predicate
from app.core.relations.terms import Apply, Cat, Const, Eq, Prefix, Sub, Term, Var, function_of
from app.core.relations.universe import Universe, UniverseFactory

__all__ = [
    "Alphabet",
    "Apply",
    "BoolDomain",
    "Cat",
    "Const",
    "Domain",
    "EnumDomain",
    "Eq",
    "EventDomain",
    "Predicate",
    "Prefix",
    "Role",
    "Sub",
    "Term",
    "TraceDomain",
    "Universe",
    "UniverseFactory",
    "Var",
    "Variable",
    "assign",
    "check_monotone",
    "cond",
    "conjunction",
    "disjunction",
    "domain_from_json",
    "exists",
    "false_predicate",
    "function_of",
    "gfp",
    "implication",
    "independent_of",
    "ite",
    "lattice_inf",
    "lattice_sup",
    "lfp",
    "negation",
    "primed",
    "refines",
    "seq_comp",
    "skip",
    "substitute",
    "substitute_codes",
    "true_predicate",
    "unprimed",
]
