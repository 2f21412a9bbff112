from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.core.algebra.exceptions import InvalidTrace
from app.core.models.rationals import parse_rat

Suite = Literal["algebra", "reactive", "quantale", "parallel"]
DomainSpec = Union[Literal["bool"], Dict[str, List[Any]]]


class SuiteConfig(BaseModel):
    """Universe parameters and checking mode shared by every command."""

    model_config = ConfigDict(extra="forbid")

    model: Literal["seq", "rat", "timed"] = "seq"
    events: List[str] = Field(default_factory=lambda: ["a", "b"], min_length=1)
    bound: int = Field(default=2, ge=0)
    grid_step: str = "1/2"
    timed_variables: List[str] = Field(default_factory=lambda: ["x"], min_length=1)
    vars: Dict[str, DomainSpec] = Field(default_factory=dict)
    samples: int = Field(default=200, gt=0)
    cases: int = Field(default=10000, gt=0)
    seed: Optional[int] = None
    exhaustive: bool = False
    suites: List[Suite] = Field(default_factory=lambda: ["algebra", "reactive", "quantale", "parallel"])

    @field_validator("grid_step", mode="before")
    @classmethod
    def _positive_rational(cls, value: Any) -> str:
        try:
            step = parse_rat(str(value))
        except InvalidTrace as e:
            raise ValueError(str(e)) from e
        if step <= 0:
            raise ValueError("grid_step must be positive")
        return f"{step.numerator}/{step.denominator}"

    @model_validator(mode="after")
    def _randomized_needs_seed(self) -> "SuiteConfig":
        if not self.exhaustive and self.seed is None:
            raise ValueError("randomized mode requires an explicit seed")
        return self

    @property
    def step(self) -> Fraction:
        return Fraction(self.grid_step)

    @property
    def mode(self) -> str:
        return "exhaustive" if self.exhaustive else "randomized"


class CommandResponse(BaseModel):
    success: bool
    error_message: Optional[str] = None
    error_type: Optional[str] = None
    verified: bool = False
    payload: Optional[Dict[str, Any]] = None
