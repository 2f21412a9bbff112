from typing import Any, List, Literal, Optional, Union

from pydantic import BaseModel, Field, model_validator


class LawReport(BaseModel):
    law: str
    cases: int
    passed: bool
    counterexample: Optional[List[Any]] = None

    @model_validator(mode="after")
    def _passed_iff_no_counterexample(self) -> "LawReport":
        if self.passed == (self.counterexample is not None):
            raise ValueError("a law report passes exactly when it has no counterexample")
        return self


class ExhaustiveMode(BaseModel):
    kind: Literal["exhaustive"] = "exhaustive"
    bound: int = Field(ge=0)


class RandomizedMode(BaseModel):
    kind: Literal["randomized"] = "randomized"
    count: int = Field(gt=0)
    seed: int


CheckMode = Union[ExhaustiveMode, RandomizedMode]
