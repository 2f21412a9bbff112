import re
from dataclasses import dataclass
from typing import Iterator, List

from app.core.dsl.ast import HEALTH_KEYWORDS
from app.core.dsl.exceptions import ParseError

KEYWORDS = frozenset(("true", "false", "II", "eps", "exists") + HEALTH_KEYWORDS)

# longest operators first
OPERATORS = ("<|", "|>", "||", "<=", "!=", "=>", "/\\", "\\/", "~", "=", ";", "^", "-", "(", ")", "[", "]", ",", "/", ".", "<", ">")

_PATTERNS = (
    ("INDEXED", re.compile(r"[01]\.[A-Za-z_][A-Za-z0-9_]*")),
    ("NUMBER", re.compile(r"\d+(?:/\d+)?")),
    ("IDENT", re.compile(r"[A-Za-z_][A-Za-z0-9_]*'?")),
    ("STRING", re.compile(r'"[^"\\]*(?:\\.[^"\\]*)*"')),
    ("TEXT", re.compile(r"'[^'\\]*(?:\\.[^'\\]*)*'")),
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int

    def describe(self) -> str:
        return "end of input" if self.kind == "EOF" else repr(self.text)


def _json_end(text: str, start: int) -> int:
    """Index just past the brace-balanced JSON object starting at `start`, or -1."""
    depth, i, in_string = 0, start, False
    while i < len(text):
        c = text[i]
        if in_string:
            if c == "\\":
                i += 1
            elif c == '"':
                in_string = False
        elif c == '"':
            in_string = True
        elif c == "{":
            depth += 1
        elif c == "}":
            depth -= 1
            if depth == 0:
                return i + 1
        i += 1
    return -1


def tokens(text: str) -> Iterator[Token]:
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        c = text[pos]
        if c == "\n":
            pos, line, line_start = pos + 1, line + 1, pos + 1
            continue
        if c.isspace():
            pos += 1
            continue
        column = pos - line_start + 1
        if c == "{":
            end = _json_end(text, pos)
            if end < 0:
                raise ParseError(line, column, "unterminated JSON literal", ["}"])
            yield Token("JSON", text[pos:end], line, column)
            pos = end
            continue
        for kind, pattern in _PATTERNS:
            match = pattern.match(text, pos)
            if match:
                word = match.group(0)
                if kind == "IDENT" and word in KEYWORDS:
                    kind = word
                yield Token(kind, word, line, column)
                pos = match.end()
                break
        else:
            for op in OPERATORS:
                if text.startswith(op, pos):
                    yield Token(op, op, line, column)
                    pos += len(op)
                    break
            else:
                raise ParseError(line, column, repr(c), ["a formula token"])
    yield Token("EOF", "", line, pos - line_start + 1)


def tokenize(text: str) -> List[Token]:
    return list(tokens(text))


def quote_text(value: str) -> str:
    return "'" + re.sub(r"(['\\])", r"\\\1", value) + "'"


def unquote_text(token: str) -> str:
    return re.sub(r"\\(.)", r"\1", token[1:-1])
