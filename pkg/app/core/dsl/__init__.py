from app.core.dsl.evaluator import Evaluator, evaluate
from app.core.dsl.exceptions import DslError, ParseError, ScopeError
from app.core.dsl.parser import parse, parse_expr
from app.core.dsl.printer import expr_to_text, to_text

__all__ = [
    "DslError",
    "Evaluator",
    "ParseError",
    "ScopeError",
    "evaluate",
    "expr_to_text",
    "parse",
    "parse_expr",
    "to_text",
]
