from typing import Any, Dict, Optional

from pydantic import BaseModel, model_validator


class Counterexample(BaseModel):
    predicate: str
    binding: Dict[str, Any]


class TheoryReport(BaseModel):
    theorem: str
    verified: bool
    cases: int = 1
    counterexample: Optional[Counterexample] = None
    precondition_failed: bool = False
    diagnostic: Optional["TheoryReport"] = None

    @model_validator(mode="after")
    def _verified_iff_no_counterexample(self) -> "TheoryReport":
        if self.precondition_failed:
            if self.verified:
                raise ValueError("a report whose precondition failed cannot be verified")
        elif self.verified == (self.counterexample is not None):
            raise ValueError("a theorem is verified exactly when it has no counterexample")
        return self


TheoryReport.model_rebuild()
