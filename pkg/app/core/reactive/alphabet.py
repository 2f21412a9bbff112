from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from app.core.algebra.base import TraceModel
from app.core.relations import Alphabet, BoolDomain, Domain, TraceDomain
from app.core.relations.alphabet import Role
from app.core.reactive.exceptions import NotReactiveAlphabet
from app.utils.logger import logger

log = logger("app.core.reactive.alphabet")

WAIT = "wait"
TR = "tr"


def trace_domain_for(
    model: TraceModel,
    bound: int,
    grid_step: Fraction = Fraction(1, 2),
    seed: int = 0,
) -> TraceDomain:
    """
    The finite trace universe for a model: sequences up to length `bound`,
    the rational grid {0, step, …, bound·step}, or the subtraction closure of
    `bound` generated timed traces.
    """
    if model.name == "seq":
        return TraceDomain.bounded_sequences(model, bound)
    if model.name == "rat":
        return TraceDomain.rational_grid(model, Fraction(grid_step), Fraction(grid_step) * bound)
    rng = np.random.default_rng(seed)
    return TraceDomain.subtraction_closure(model, [model.generate(rng) for _ in range(bound)])


def reactive_alphabet(traces: TraceDomain, program_vars: Optional[Mapping[str, Domain]] = None) -> Alphabet:
    """wait, tr and the program variables v, with their primed twins."""
    before = {WAIT: BoolDomain(), TR: traces}
    for name, domain in (program_vars or {}).items():
        if name in before:
            raise NotReactiveAlphabet(f"program variable '{name}' clashes with an observation variable")
        before[name] = domain
    alphabet = Alphabet(before)
    log.debug("reactive alphabet {} has {} bindings", alphabet, alphabet.size)
    return alphabet


def require_reactive(alphabet: Alphabet) -> TraceDomain:
    """Check wait/wait′ are boolean and tr/tr′ share a trace universe; return it."""
    for name in (WAIT, TR):
        if name not in alphabet or alphabet.variable(name).role != Role.BEFORE:
            raise NotReactiveAlphabet(f"missing observation variable '{name}' with an after-state")
    if not isinstance(alphabet.domain(WAIT), BoolDomain):
        raise NotReactiveAlphabet("wait must range over booleans")
    traces = alphabet.domain(TR)
    if not isinstance(traces, TraceDomain):
        raise NotReactiveAlphabet("tr must range over a trace universe")
    return traces


def program_variables(alphabet: Alphabet) -> tuple:
    return tuple(v.name for v in alphabet.before if v.name not in (WAIT, TR))
