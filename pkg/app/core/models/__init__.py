from fractions import Fraction
from typing import Any, Dict, Optional, Sequence

from app.core.algebra.base import TraceModel
from app.core.algebra.exceptions import InvalidTrace
from app.core.models.polynomials import Poly
from app.core.models.rationals import NonNegRat, RationalModel, format_rat, nonneg_rat
from app.core.models.sequences import EventSeq, EventSeqModel
from app.core.models.timed import Segment, TimedTrace, TimedTraceModel

MODEL_NAMES = ("seq", "rat", "timed")


def get_model(
    name: str,
    events: Sequence[str] = ("a", "b"),
    grid_step: Fraction = Fraction(1, 2),
    variables: Sequence[str] = ("x",),
    discrete: Sequence[str] = (),
    max_length: int = 4,
) -> TraceModel:
    """Build one of the shipped trace models from configuration values."""
    if name == "seq":
        return EventSeqModel(events=events, max_length=max_length)
    if name == "rat":
        return RationalModel(grid_step=grid_step)
    if name == "timed":
        return TimedTraceModel(variables=variables, discrete=discrete)
    raise InvalidTrace(name, f"unknown model; expected one of {list(MODEL_NAMES)}")


def encode_value(value: Any, model: Optional[TraceModel] = None) -> Any:
    """JSON form of any binding value: traces in their interchange format."""
    if isinstance(value, bool) or value is None:
        return value
    if model is not None and model.is_trace(value):
        return model.to_json(value)
    if isinstance(value, EventSeq):
        return list(value.items)
    if isinstance(value, Fraction):
        return format_rat(value)
    if isinstance(value, TimedTrace):
        return TimedTraceModel(variables=value.variables or ("x",)).to_json(value)
    if isinstance(value, (int, str, float)):
        return value
    return str(value)


def encode_binding(binding: Dict[str, Any], model: Optional[TraceModel] = None) -> Dict[str, Any]:
    return {name: encode_value(value, model) for name, value in binding.items()}


__all__ = [
    "EventSeq",
    "EventSeqModel",
    "NonNegRat",
    "Poly",
    "RationalModel",
    "Segment",
    "TimedTrace",
    "TimedTraceModel",
    "encode_binding",
    "encode_value",
    "format_rat",
    "get_model",
    "nonneg_rat",
]
