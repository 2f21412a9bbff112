from typing import Iterable


class ReactiveError(Exception):
    """Base exception for all reactive-theory errors."""
    pass


class NotReactiveAlphabet(ReactiveError):
    """Raised when a predicate's alphabet lacks the reactive observation variables."""
    def __init__(self, details: str):
        super().__init__(f"Alphabet is not reactive: {details}")


class UnhealthyMember(ReactiveError):
    """Raised when a theory operation receives a predicate outside the healthy carrier."""
    def __init__(self, operation: str, index: int, condition: str = "R"):
        super().__init__(f"Cannot perform {operation}: member {index} is not {condition}-healthy")


class EmptySet(ReactiveError):
    """Raised when an operation needs a nonempty set of predicates."""
    def __init__(self, operation: str):
        super().__init__(f"Cannot perform {operation} on an empty set of predicates")


class UnknownHealthiness(ReactiveError):
    """Raised when a healthiness condition is requested by an unknown name."""
    def __init__(self, name: str, available: Iterable[str]):
        super().__init__(f"Unknown healthiness condition '{name}'. Available: {', '.join(available)}")
