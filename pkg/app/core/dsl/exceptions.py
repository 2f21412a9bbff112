from typing import Iterable


class DslError(Exception):
    """Base exception for all formula-language errors."""
    pass


class ParseError(DslError):
    """Raised when formula text does not match the grammar."""
    def __init__(self, line: int, column: int, found: str, expected: Iterable[str]):
        self.line = line
        self.column = column
        self.expected = sorted(set(expected))
        super().__init__(
            f"Parse error at line {line}, column {column}: found {found}, expected one of {', '.join(self.expected)}"
        )


class ScopeError(DslError):
    """Raised when a formula names a variable or predicate the context does not declare."""
    def __init__(self, name: str, available: Iterable[str]):
        super().__init__(f"'{name}' is not in scope. Available: {', '.join(available)}")
