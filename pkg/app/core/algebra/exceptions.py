class TraceAlgebraError(Exception):
    """Base exception for all trace-algebra errors."""
    pass


class GeneratorError(TraceAlgebraError):
    """Raised when a model cannot produce carrier values for law checking."""
    def __init__(self, model: str, details: str):
        super().__init__(f"Generator for model '{model}' failed: {details}")


class InvalidTrace(TraceAlgebraError):
    """Raised when a value is not a well-formed element of the model's carrier."""
    def __init__(self, model: str, details: str):
        super().__init__(f"Invalid {model} trace: {details}")


class VariableSetMismatch(TraceAlgebraError):
    """Raised when two nonempty timed traces declare different variable names."""
    def __init__(self, left: list, right: list):
        super().__init__(
            f"Cannot concatenate timed traces over {sorted(left)} and {sorted(right)}"
        )


class OutOfDomain(TraceAlgebraError):
    """Raised when a timed trace is sampled outside its half-open domain [0, end)."""
    def __init__(self, at: object, end: object):
        super().__init__(f"Time {at} lies outside the trace domain [0, {end})")
