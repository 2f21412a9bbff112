"""Pretty-printer producing text that parses back to the same syntax tree."""
import json

from app.core.algebra.exceptions import InvalidTrace
from app.core.dsl import ast
from app.core.dsl.lexer import quote_text
from app.core.models.rationals import parse_rat

_ATOM = 9


def _string(value: str) -> str:
    # a double-quoted "p/q" reads back as a rational
    try:
        parse_rat(value)
    except InvalidTrace:
        return json.dumps(value)
    return quote_text(value)


def _level(node: ast.Formula) -> int:
    if isinstance(node, ast.Exists):
        return 0
    if isinstance(node, ast.Seq):
        return 1
    if isinstance(node, ast.Par):
        return 2
    if isinstance(node, ast.Cond):
        return 3
    if isinstance(node, ast.Implies):
        return 4
    if isinstance(node, ast.Or):
        return 5
    if isinstance(node, ast.And):
        return 6
    if isinstance(node, (ast.Not, ast.Healthy)):
        return 7
    if isinstance(node, (ast.Subst, ast.Compare)):
        return 8
    return _ATOM


def _wrap(node: ast.Formula, minimum: int) -> str:
    text = to_text(node)
    return f"({text})" if _level(node) < minimum else text


def expr_to_text(node: ast.Expr) -> str:
    if isinstance(node, ast.VarRef):
        return node.name
    if isinstance(node, ast.Eps):
        return "eps"
    if isinstance(node, ast.EventsLit):
        return "<" + ",".join(node.events) + ">"
    if isinstance(node, ast.RatLit):
        value = node.value
        return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(node, ast.StrLit):
        return _string(node.value)
    if isinstance(node, ast.BoolLit):
        return "true" if node.value else "false"
    if isinstance(node, ast.TimedLit):
        return node.text
    op = "^" if isinstance(node, ast.Concat) else "-"
    right = expr_to_text(node.right)
    if isinstance(node.right, (ast.Concat, ast.Minus)):
        right = f"({right})"
    return f"{expr_to_text(node.left)} {op} {right}"


def to_text(node: ast.Formula) -> str:
    """Render a formula with the fewest parentheses the grammar needs."""
    if isinstance(node, ast.Truth):
        return "true" if node.value else "false"
    if isinstance(node, ast.Skip):
        return "II"
    if isinstance(node, ast.Name):
        return node.name
    if isinstance(node, ast.Compare):
        return f"{expr_to_text(node.left)} {node.op} {expr_to_text(node.right)}"
    if isinstance(node, ast.Not):
        return "~" + _wrap(node.body, 7)
    if isinstance(node, ast.Healthy):
        return f"{node.condition} {_wrap(node.body, 7)}"
    if isinstance(node, ast.Subst):
        body = to_text(node.body)
        if not isinstance(node.body, ast.Subst) and _level(node.body) < _ATOM:
            body = f"({body})"
        values = ", ".join(expr_to_text(v) for v in node.values)
        return f"{body}[{values} / {', '.join(node.names)}]"
    if isinstance(node, ast.Exists):
        return f"exists {', '.join(node.names)} . {to_text(node.body)}"
    if isinstance(node, ast.And):
        return f"{_wrap(node.left, 6)} /\\ {_wrap(node.right, 7)}"
    if isinstance(node, ast.Or):
        return f"{_wrap(node.left, 5)} \\/ {_wrap(node.right, 6)}"
    if isinstance(node, ast.Implies):
        return f"{_wrap(node.left, 5)} => {_wrap(node.right, 4)}"
    if isinstance(node, ast.Cond):
        return f"{_wrap(node.left, 4)} <| {to_text(node.guard)} |> {_wrap(node.right, 3)}"
    if isinstance(node, ast.Par):
        return f"{_wrap(node.left, 3)} || {_wrap(node.merge, 3)} || {_wrap(node.right, 3)}"
    if isinstance(node, ast.Seq):
        return f"{_wrap(node.left, 1)} ; {_wrap(node.right, 2)}"
    raise TypeError(f"not a formula node: {node!r}")
