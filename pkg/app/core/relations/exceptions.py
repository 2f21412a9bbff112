from typing import Iterable


class RelationError(Exception):
    """Base exception for all relational-engine errors."""
    pass


class AlphabetMismatch(RelationError):
    """Raised when predicates combined by an operator live over different alphabets."""
    def __init__(self, operation: str, details: str = "operands have different alphabets"):
        super().__init__(f"Cannot perform {operation}: {details}")


class UnknownVariable(RelationError):
    """Raised when a variable is not part of the alphabet."""
    def __init__(self, name: str, available: Iterable[str]):
        available_names = ", ".join(available)
        super().__init__(f"Variable '{name}' not found. Available variables: {available_names}")


class DomainViolation(RelationError):
    """Raised when a computed or literal value leaves a variable's finite domain."""
    def __init__(self, variable: str, details: str):
        super().__init__(f"Value for '{variable}' leaves its domain: {details}")


class ConditionMentionsAfterVars(RelationError):
    """Raised when a conditional's guard constrains primed variables."""
    def __init__(self, names: Iterable[str]):
        super().__init__(
            f"Conditional guard must only mention before-variables; it constrains {sorted(names)}"
        )


class NonMonotoneDetected(RelationError):
    """Raised when a fixed-point iteration shows the transformer is not monotone."""
    def __init__(self, operation: str, details: str):
        super().__init__(f"{operation} requires a monotone transformer: {details}")


class UniverseTooLarge(RelationError):
    """Raised when an alphabet's binding universe exceeds the configured limit."""
    def __init__(self, size: int, limit: int):
        super().__init__(f"Universe of {size} bindings exceeds the limit of {limit}")


class EvaluationError(RelationError):
    """Raised when an unexpected error occurs while evaluating over a universe."""
    def __init__(self, operation: str, details: str):
        super().__init__(f"Error during {operation}: {details}")
