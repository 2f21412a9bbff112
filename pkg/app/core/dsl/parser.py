"""
Recursive-descent parser for formulas.

From loosest to tightest binding:

    formula  := par (";" par)*
    par      := cond ("||" cond "||" cond)?
    cond     := implies ("<|" formula "|>" cond)?
    implies  := or ("=>" implies)?
    or       := and ("\\/" and)*
    and      := unary ("/\\" unary)*
    unary    := "~" unary | HEALTH unary | "exists" names "." formula | postfix
    postfix  := primary ("[" exprs "/" names "]")*
    primary  := "(" formula ")" | "II" | expr (("=" | "!=" | "<=") expr)?
    expr     := term (("^" | "-") term)*
    term     := VAR | INDEXED | "eps" | "<" events ">" | NUMBER | STRING | TEXT | JSON | "true" | "false" | "(" expr ")"

A double-quoted "p/q" is a rational; single-quoted text is always a string.
"""
import json
from typing import Iterable, List, NoReturn, Set, Tuple

from app.core.dsl import ast
from app.core.dsl.exceptions import ParseError
from app.core.dsl.lexer import Token, tokenize, unquote_text
from app.core.algebra.exceptions import InvalidTrace
from app.core.models.rationals import parse_rat

RELATIONS = ("=", "!=", "<=")


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.expected: Set[str] = set()

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def at(self, *kinds: str) -> bool:
        self.expected.update(kinds)
        return self.token.kind in kinds

    def advance(self) -> Token:
        token = self.token
        self.pos += 1
        self.expected = set()
        return token

    def expect(self, kind: str) -> Token:
        if not self.at(kind):
            self.fail()
        return self.advance()

    def fail(self, expected: Iterable[str] = ()) -> NoReturn:
        self.expected.update(expected)
        raise ParseError(self.token.line, self.token.column, self.token.describe(), self.expected)

    def formula(self) -> ast.Formula:
        node = self.par()
        while self.at(";"):
            self.advance()
            node = ast.Seq(node, self.par())
        return node

    def par(self) -> ast.Formula:
        node = self.cond()
        if self.at("||"):
            self.advance()
            merge = self.cond()
            self.expect("||")
            node = ast.Par(node, merge, self.cond())
        return node

    def cond(self) -> ast.Formula:
        node = self.implies()
        if self.at("<|"):
            self.advance()
            guard = self.formula()
            self.expect("|>")
            node = ast.Cond(node, guard, self.cond())
        return node

    def implies(self) -> ast.Formula:
        node = self.disjunction()
        if self.at("=>"):
            self.advance()
            node = ast.Implies(node, self.implies())
        return node

    def disjunction(self) -> ast.Formula:
        node = self.conjunction()
        while self.at("\\/"):
            self.advance()
            node = ast.Or(node, self.conjunction())
        return node

    def conjunction(self) -> ast.Formula:
        node = self.unary()
        while self.at("/\\"):
            self.advance()
            node = ast.And(node, self.unary())
        return node

    def unary(self) -> ast.Formula:
        if self.at("~"):
            self.advance()
            return ast.Not(self.unary())
        if self.at(*ast.HEALTH_KEYWORDS):
            condition = self.advance().kind
            return ast.Healthy(condition, self.unary())
        if self.at("exists"):
            self.advance()
            names = self.names()
            self.expect(".")
            return ast.Exists(names, self.formula())
        return self.postfix()

    def names(self) -> Tuple[str, ...]:
        names = [self.variable()]
        while self.at(","):
            self.advance()
            names.append(self.variable())
        return tuple(names)

    def variable(self) -> str:
        if not self.at("IDENT", "INDEXED"):
            self.fail()
        return self.advance().text

    def postfix(self) -> ast.Formula:
        node = self.primary()
        while self.at("["):
            self.advance()
            values = [self.expr()]
            while self.at(","):
                self.advance()
                values.append(self.expr())
            self.expect("/")
            names = self.names()
            if len(names) != len(values):
                raise ParseError(
                    self.token.line, self.token.column, f"{len(values)} values for {len(names)} variables", ["]"]
                )
            self.expect("]")
            node = ast.Subst(node, tuple(values), names)
        return node

    def primary(self) -> ast.Formula:
        if self.at("II"):
            self.advance()
            return ast.Skip()
        if self.at("("):
            start = self.pos
            try:
                self.advance()
                node = self.formula()
                self.expect(")")
            except ParseError:
                node = None
            if node is not None and not self.at("^", "-", *RELATIONS):
                return node
            self.pos = start
        return self.atom()

    def atom(self) -> ast.Formula:
        left = self.expr()
        if self.at(*RELATIONS):
            op = self.advance().kind
            return ast.Compare(op, left, self.expr())
        if isinstance(left, ast.BoolLit):
            return ast.Truth(left.value)
        if isinstance(left, ast.VarRef):
            return ast.Name(left.name)
        self.fail(RELATIONS)

    def expr(self) -> ast.Expr:
        node = self.term()
        while self.at("^", "-"):
            op = self.advance().kind
            right = self.term()
            node = ast.Concat(node, right) if op == "^" else ast.Minus(node, right)
        return node

    def term(self) -> ast.Expr:
        if self.at("IDENT", "INDEXED"):
            return ast.VarRef(self.advance().text)
        if self.at("eps"):
            self.advance()
            return ast.Eps()
        if self.at("true", "false"):
            return ast.BoolLit(self.advance().kind == "true")
        if self.at("NUMBER"):
            token = self.advance()
            try:
                return ast.RatLit(parse_rat(token.text))
            except InvalidTrace:
                raise ParseError(token.line, token.column, repr(token.text), ["a rational p/q with q > 0"])
        if self.at("STRING"):
            text = json.loads(self.advance().text)
            try:
                return ast.RatLit(parse_rat(text))
            except InvalidTrace:
                return ast.StrLit(text)
        if self.at("TEXT"):
            return ast.StrLit(unquote_text(self.advance().text))
        if self.at("JSON"):
            token = self.advance()
            try:
                data = json.loads(token.text)
            except json.JSONDecodeError:
                raise ParseError(token.line, token.column, "malformed JSON literal", ["a JSON object"])
            return ast.TimedLit(json.dumps(data, sort_keys=True, separators=(",", ":")))
        if self.at("<"):
            self.advance()
            events: List[str] = []
            if not self.at(">"):
                events.append(self.expect("IDENT").text)
                while self.at(","):
                    self.advance()
                    events.append(self.expect("IDENT").text)
            self.expect(">")
            return ast.EventsLit(tuple(events))
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail()


def parse(text: str) -> ast.Formula:
    """Parse formula text into its syntax tree."""
    parser = _Parser(text)
    node = parser.formula()
    if not parser.at("EOF"):
        parser.fail()
    return node


def parse_expr(text: str) -> ast.Expr:
    parser = _Parser(text)
    node = parser.expr()
    if not parser.at("EOF"):
        parser.fail()
    return node
