from app.core.reactive.alphabet import program_variables, reactive_alphabet, require_reactive, trace_domain_for
from app.core.reactive.healthiness import HEALTHINESS, R, R1, R1_R2c, R2c, R3, compose, healthiness, is_healthy
from app.core.reactive.theory import (
    check_closures,
    check_quantale,
    check_seq_contribution,
    contribution_form,
    sequential_contribution,
    theory_inf,
    theory_sup,
)
from app.core.reactive.types import Counterexample, TheoryReport

__all__ = [
    "Counterexample",
    "HEALTHINESS",
    "R",
    "R1",
    "R1_R2c",
    "R2c",
    "R3",
    "TheoryReport",
    "check_closures",
    "check_quantale",
    "check_seq_contribution",
    "compose",
    "contribution_form",
    "healthiness",
    "is_healthy",
    "program_variables",
    "reactive_alphabet",
    "require_reactive",
    "sequential_contribution",
    "theory_inf",
    "theory_sup",
    "trace_domain_for",
]
