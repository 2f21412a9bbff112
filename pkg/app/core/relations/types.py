from typing import List

from pydantic import BaseModel


class ValueCount(BaseModel):
    value: str
    count: int
    percentage: float


class VariableSummary(BaseModel):
    name: str
    role: str
    values: List[ValueCount]


class PredicateSummary(BaseModel):
    rows: int
    universe: int
    variables: List[VariableSummary]
