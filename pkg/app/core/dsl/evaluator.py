import json
from typing import Dict, Mapping, Optional, Union

from app.core.algebra.exceptions import TraceAlgebraError
from app.core.dsl import ast
from app.core.dsl.exceptions import DslError, ScopeError
from app.core.dsl.parser import parse
from app.core.models.sequences import EventSeq
from app.core.parallel.merge import R2m, Rm, merge_alphabet, par_by_merge
from app.core.reactive import healthiness
from app.core.reactive.exceptions import ReactiveError
from app.core.relations import (
    Alphabet,
    BoolDomain,
    Cat,
    Const,
    Eq,
    Predicate,
    Prefix,
    Sub,
    Term,
    TraceDomain,
    Var,
    cond,
    exists,
    implication,
    seq_comp,
    skip,
    substitute,
)
from app.core.relations.exceptions import DomainViolation, RelationError
from app.utils.logger import logger

log = logger("app.core.dsl.evaluator")

MERGE_CONDITIONS = {"R2m": R2m, "Rm": Rm}


def is_indexed(name: str) -> bool:
    return len(name) > 2 and name[0] in "01" and name[1] == "."


class Evaluator:
    """Denotes formulas as predicates over a process alphabet or its merge alphabet."""

    def __init__(self, alphabet: Alphabet, predicates: Optional[Mapping[str, Predicate]] = None):
        self.alphabet = alphabet
        self.predicates: Dict[str, Predicate] = dict(predicates or {})

    def _merge(self) -> Alphabet:
        return merge_alphabet(self.alphabet)

    def _reads_merge(self, node) -> bool:
        if isinstance(node, ast.VarRef):
            return is_indexed(node.name)
        if isinstance(node, ast.Name):
            if is_indexed(node.name):
                return True
            p = self.predicates.get(node.name)
            return p is not None and p.alphabet != self.alphabet
        if isinstance(node, ast.Healthy) and node.condition in MERGE_CONDITIONS:
            return True
        if isinstance(node, ast.Par):
            return False
        if isinstance(node, (ast.Exists, ast.Subst)):
            names = node.names
            if any(is_indexed(n) for n in names):
                return True
        children = [getattr(node, f) for f in getattr(node, "__dataclass_fields__", {})]
        for child in children:
            items = child if isinstance(child, tuple) else (child,)
            if any(self._reads_merge(item) for item in items if hasattr(item, "__dataclass_fields__")):
                return True
        return False

    def target_alphabet(self, node: ast.Formula) -> Alphabet:
        """The merge alphabet when the formula reads indexed copies or applies a merge condition."""
        return self._merge() if self._reads_merge(node) else self.alphabet

    def evaluate(self, node: Union[str, ast.Formula], target: Optional[Alphabet] = None) -> Predicate:
        """Denote a formula over `target`, by default the alphabet `target_alphabet` picks."""
        if isinstance(node, str):
            node = parse(node)
        try:
            return self._formula(node, target or self.target_alphabet(node))
        except (DslError, RelationError, ReactiveError, TraceAlgebraError):
            raise
        except Exception as e:
            raise DslError(f"Error during evaluation: {e}") from e

    def _scope(self, name: str, alphabet: Alphabet) -> str:
        if name not in alphabet:
            raise ScopeError(name, alphabet.names)
        return name

    def _traces(self, alphabet: Alphabet) -> TraceDomain:
        for variable in alphabet.variables:
            if isinstance(variable.domain, TraceDomain):
                return variable.domain
        raise ScopeError("a trace-valued variable", alphabet.names)

    def _trace_literal(self, value, alphabet: Alphabet) -> Term:
        traces = self._traces(alphabet)
        if traces.code(value) < 0:
            raise DomainViolation("literal", f"{value} is not in the trace universe of {traces.size} traces")
        return Const(value)

    def _expr(self, node: ast.Expr, alphabet: Alphabet) -> Term:
        if isinstance(node, ast.VarRef):
            return Var(self._scope(node.name, alphabet))
        if isinstance(node, ast.Eps):
            return Const(self._traces(alphabet).model.empty())
        if isinstance(node, ast.EventsLit):
            return self._trace_literal(EventSeq(node.events), alphabet)
        if isinstance(node, ast.TimedLit):
            model = self._traces(alphabet).model
            return self._trace_literal(model.from_json(json.loads(node.text)), alphabet)
        if isinstance(node, (ast.RatLit, ast.StrLit, ast.BoolLit)):
            return Const(node.value)
        if isinstance(node, ast.Concat):
            return Cat(self._expr(node.left, alphabet), self._expr(node.right, alphabet))
        if isinstance(node, ast.Minus):
            return Sub(self._expr(node.left, alphabet), self._expr(node.right, alphabet))
        raise DslError(f"not an expression: {node!r}")

    def _name(self, name: str, alphabet: Alphabet) -> Predicate:
        if name in alphabet and isinstance(alphabet.domain(name), BoolDomain):
            return Predicate.where(alphabet, Eq(Var(name), Const(True)))
        if name in self.predicates:
            p = self.predicates[name]
            if p.alphabet != alphabet:
                raise ScopeError(f"{name} over {alphabet}", self.predicates)
            return p
        raise ScopeError(name, [v.name for v in alphabet.variables if isinstance(v.domain, BoolDomain)] + list(self.predicates))

    def _formula(self, node: ast.Formula, alphabet: Alphabet) -> Predicate:
        if isinstance(node, ast.Truth):
            return Predicate.true(alphabet) if node.value else Predicate.false(alphabet)
        if isinstance(node, ast.Skip):
            return skip(alphabet)
        if isinstance(node, ast.Name):
            return self._name(node.name, alphabet)
        if isinstance(node, ast.Compare):
            left, right = self._expr(node.left, alphabet), self._expr(node.right, alphabet)
            if node.op == "<=":
                return Predicate.where(alphabet, Prefix(left, right))
            equal = Predicate.where(alphabet, Eq(left, right))
            return equal if node.op == "=" else ~equal
        if isinstance(node, ast.Not):
            return ~self._formula(node.body, alphabet)
        if isinstance(node, ast.And):
            return self._formula(node.left, alphabet) & self._formula(node.right, alphabet)
        if isinstance(node, ast.Or):
            return self._formula(node.left, alphabet) | self._formula(node.right, alphabet)
        if isinstance(node, ast.Implies):
            return implication(self._formula(node.left, alphabet), self._formula(node.right, alphabet))
        if isinstance(node, ast.Cond):
            return cond(
                self._formula(node.left, alphabet),
                self._formula(node.guard, alphabet),
                self._formula(node.right, alphabet),
            )
        if isinstance(node, ast.Exists):
            return exists([self._scope(n, alphabet) for n in node.names], self._formula(node.body, alphabet))
        if isinstance(node, ast.Subst):
            body = self._formula(node.body, alphabet)
            substitution = {
                self._scope(name, alphabet): self._expr(value, alphabet) for name, value in zip(node.names, node.values)
            }
            return substitute(body, substitution)
        if isinstance(node, ast.Healthy):
            body = self._formula(node.body, alphabet)
            condition = MERGE_CONDITIONS.get(node.condition) or healthiness(node.condition)
            return condition(body)
        if isinstance(node, ast.Seq):
            return seq_comp(self._formula(node.left, alphabet), self._formula(node.right, alphabet))
        if isinstance(node, ast.Par):
            if alphabet != self.alphabet:
                raise DslError("parallel composition takes processes, not merge predicates")
            return par_by_merge(
                self._formula(node.left, alphabet),
                self._formula(node.merge, self._merge()),
                self._formula(node.right, alphabet),
            )
        raise DslError(f"not a formula: {node!r}")


def evaluate(formula: Union[str, ast.Formula], alphabet: Alphabet, predicates: Optional[Mapping[str, Predicate]] = None) -> Predicate:
    """The predicate a formula denotes over `alphabet`, or over its merge alphabet when it reads indexed copies."""
    log.debug("evaluating {}", formula)
    return Evaluator(alphabet, predicates).evaluate(formula)
