"""
Piecewise-polynomial timed traces.

A trace is a finite list of segments, each a positive duration with one
polynomial per variable in local time. The function it denotes is defined on
[0, end) and continuous on every half-open segment. Traces are kept in canonical
form: no two adjacent segments continue each other's polynomials, so structural
equality coincides with equality of the denoted functions.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from app.core.algebra.base import TraceModel
from app.core.algebra.exceptions import InvalidTrace, OutOfDomain, VariableSetMismatch
from app.core.models.polynomials import Poly
from app.core.models.rationals import format_rat, nonneg_rat, parse_rat

Valuation = Tuple[Tuple[str, Poly], ...]


@dataclass(frozen=True)
class Segment:
    duration: Fraction
    valuation: Valuation

    @classmethod
    def of(cls, duration: Any, valuation: Mapping[str, Poly]) -> "Segment":
        return cls(Fraction(duration), tuple(sorted(valuation.items())))

    @property
    def variables(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.valuation)

    def at(self, local: Fraction) -> Dict[str, Fraction]:
        return {name: poly(local) for name, poly in self.valuation}

    def continues_into(self, other: "Segment") -> bool:
        """True when `other` carries on this segment's polynomials past its end."""
        if self.variables != other.variables:
            return False
        return all(
            p.shift(self.duration) == q
            for (_, p), (_, q) in zip(self.valuation, other.valuation)
        )

    def advanced(self, offset: Fraction) -> "Segment":
        """The remainder of this segment after `offset`, re-based to local time 0."""
        return Segment(
            self.duration - offset,
            tuple((name, poly.shift(offset)) for name, poly in self.valuation),
        )

    @property
    def max_degree(self) -> int:
        return max((max(poly.degree, 0) for _, poly in self.valuation), default=0)


def canonicalize(segments: Sequence[Segment]) -> Tuple[Segment, ...]:
    merged: List[Segment] = []
    for segment in segments:
        if merged and merged[-1].continues_into(segment):
            last = merged.pop()
            segment = Segment(last.duration + segment.duration, last.valuation)
        merged.append(segment)
    return tuple(merged)


def is_canonical(segments: Sequence[Segment]) -> bool:
    return not any(a.continues_into(b) for a, b in zip(segments, segments[1:]))


def well_formed(segments: Sequence[Segment]) -> bool:
    """Positive durations, one variable set throughout, and canonical adjacency."""
    if any(s.duration <= 0 for s in segments):
        return False
    if len({s.variables for s in segments}) > 1:
        return False
    return is_canonical(segments)


@dataclass(frozen=True)
class TimedTrace:
    segments: Tuple[Segment, ...] = ()

    @classmethod
    def canonical(cls, segments: Sequence[Segment]) -> "TimedTrace":
        return cls(canonicalize(segments))

    @property
    def is_empty(self) -> bool:
        return not self.segments

    @property
    def variables(self) -> Tuple[str, ...]:
        return self.segments[0].variables if self.segments else ()

    @property
    def end(self) -> Fraction:
        return sum((s.duration for s in self.segments), Fraction(0))

    def breakpoints(self) -> List[Fraction]:
        points, t = [Fraction(0)], Fraction(0)
        for s in self.segments:
            t += s.duration
            points.append(t)
        return points

    def __str__(self) -> str:
        if not self.segments:
            return "ε"
        parts = []
        for s in self.segments:
            body = ", ".join(f"{name}↦{poly}" for name, poly in s.valuation)
            parts.append(f"[{s.duration}: {body}]")
        return "".join(parts)


def tt_end(f: TimedTrace) -> Fraction:
    return f.end


def tt_concat(f: TimedTrace, g: TimedTrace) -> TimedTrace:
    if f.is_empty:
        return g
    if g.is_empty:
        return f
    if f.variables != g.variables:
        raise VariableSetMismatch(list(f.variables), list(g.variables))
    # only the boundary pair can become mergeable
    return TimedTrace.canonical(f.segments + g.segments)


def tt_at(f: TimedTrace, t: Any) -> Dict[str, Fraction]:
    t = Fraction(t)
    if t < 0:
        raise OutOfDomain(t, f.end)
    start = Fraction(0)
    for s in f.segments:
        if t < start + s.duration:
            return s.at(t - start)
        start += s.duration
    raise OutOfDomain(t, f.end)


def tt_prefix(x: TimedTrace, y: TimedTrace) -> bool:
    if x.is_empty:
        return True
    if x.variables != y.variables or len(x.segments) > len(y.segments):
        return False
    n = len(x.segments)
    if x.segments[: n - 1] != y.segments[: n - 1]:
        return False
    last, target = x.segments[-1], y.segments[n - 1]
    return last.valuation == target.valuation and last.duration <= target.duration


def tt_subtract(y: TimedTrace, x: TimedTrace) -> TimedTrace:
    if not tt_prefix(x, y):
        return TimedTrace()
    if x.is_empty:
        return y
    n = len(x.segments)
    last, target = x.segments[-1], y.segments[n - 1]
    rest = y.segments[n:]
    if last.duration < target.duration:
        rest = (target.advanced(last.duration),) + rest
    return TimedTrace(rest)


@dataclass(frozen=True)
class PartialTrace:
    """
    A finite union of shifted traces, i.e. a partial function on ℝ≥0.

    This is the function view in which shift (≫) and union are defined; it is
    only used to state concatenation and as a sampling oracle.
    """

    pieces: Tuple[Tuple[Fraction, TimedTrace], ...] = ()

    def shift(self, n: Any) -> "PartialTrace":
        n = nonneg_rat(n)
        return PartialTrace(tuple((offset + n, f) for offset, f in self.pieces))

    def union(self, other: "PartialTrace") -> "PartialTrace":
        return PartialTrace(self.pieces + other.pieces)

    def at(self, x: Any) -> Optional[Dict[str, Fraction]]:
        x = Fraction(x)
        for offset, f in self.pieces:
            if offset <= x < offset + f.end:
                return tt_at(f, x - offset)
        return None

    def breakpoints(self) -> List[Fraction]:
        points = set()
        for offset, f in self.pieces:
            points.update(offset + p for p in f.breakpoints())
        return sorted(points)


def tt_shift(f: TimedTrace, n: Any) -> PartialTrace:
    """f ≫ n: the function λx • f(x − n), undefined below n."""
    return PartialTrace(((Fraction(0), f),)).shift(n)


def as_partial(f: TimedTrace) -> PartialTrace:
    return tt_shift(f, 0)


def concat_as_union(f: TimedTrace, g: TimedTrace) -> PartialTrace:
    """f ∪ (g ≫ end(f)), the defining form of concatenation."""
    return as_partial(f).union(tt_shift(g, f.end))


def sample_points(breakpoints: Sequence[Fraction], per_interval: int) -> List[Fraction]:
    per_interval = max(per_interval, 1)
    points: List[Fraction] = []
    for a, b in zip(breakpoints, breakpoints[1:]):
        if b <= a:
            continue
        step = (b - a) / per_interval
        points.extend(a + i * step for i in range(per_interval))
    return points


def partial_agree(f: PartialTrace, g: PartialTrace, points: Sequence[Fraction]) -> bool:
    return all(f.at(p) == g.at(p) for p in points)


def pointwise_eq(f: TimedTrace, g: TimedTrace) -> bool:
    """
    Semantic equality by sampling.

    On each interval of the common refinement of both segmentations, both traces
    are polynomials of degree at most d; agreement on d + 1 distinct points
    forces identical polynomials, so this oracle is complete.
    """
    if f.end != g.end:
        return False
    if f.is_empty:
        return True
    if f.variables != g.variables:
        return False
    cuts = sorted(set(f.breakpoints()) | set(g.breakpoints()))
    degree = max(s.max_degree for s in f.segments + g.segments)
    return all(tt_at(f, p) == tt_at(g, p) for p in sample_points(cuts, degree + 1))


def tt_closure_check(f: TimedTrace, g: TimedTrace) -> bool:
    """
    f ⌢ g is a well-formed trace, and decomposing it at end(f) yields
    well-formed traces equal to f and g.
    """
    if not (well_formed(f.segments) and well_formed(g.segments)):
        return False
    fg = tt_concat(f, g)
    if not well_formed(fg.segments) or fg.end != f.end + g.end:
        return False
    return tt_prefix(f, fg) and tt_subtract(fg, f) == g


class TimedTraceModel(TraceModel[TimedTrace]):
    """
    Timed traces over a fixed set of variables.

    Discrete variables (events, modes) are carried as constant polynomials; the
    validator rejects anything else on them.
    """

    name = "timed"

    def __init__(
        self,
        variables: Sequence[str] = ("x",),
        discrete: Sequence[str] = (),
        durations: Sequence[Fraction] = (Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(3, 2)),
        coefficient_range: Tuple[int, int] = (-2, 2),
        max_degree: int = 2,
        max_segments: int = 3,
        continuation_probability: float = 0.25,
    ):
        if not variables:
            raise InvalidTrace(self.name, "a timed-trace model needs at least one variable")
        unknown = set(discrete) - set(variables)
        if unknown:
            raise InvalidTrace(self.name, f"discrete variables {sorted(unknown)} are not declared")
        self.variables: Tuple[str, ...] = tuple(sorted(set(variables)))
        self.discrete: FrozenSet[str] = frozenset(discrete)
        self.durations = tuple(Fraction(d) for d in durations)
        self.coefficient_range = coefficient_range
        self.max_degree = max_degree
        self.max_segments = max_segments
        self.continuation_probability = continuation_probability

    def concat(self, x: TimedTrace, y: TimedTrace) -> TimedTrace:
        return tt_concat(x, y)

    def empty(self) -> TimedTrace:
        return TimedTrace()

    def prefix(self, x: TimedTrace, y: TimedTrace) -> bool:
        return tt_prefix(x, y)

    def subtract(self, y: TimedTrace, x: TimedTrace) -> TimedTrace:
        return tt_subtract(y, x)

    def _random_poly(self, rng: np.random.Generator, name: str) -> Poly:
        low, high = self.coefficient_range
        degree = 0 if name in self.discrete else int(rng.integers(0, self.max_degree + 1))
        return Poly(tuple(Fraction(int(c)) for c in rng.integers(low, high + 1, size=degree + 1)))

    def generate(self, rng: np.random.Generator) -> TimedTrace:
        count = int(rng.integers(0, self.max_segments + 1))
        segments: List[Segment] = []
        for _ in range(count):
            duration = self.durations[int(rng.integers(len(self.durations)))]
            if segments and rng.random() < self.continuation_probability:
                previous = segments[-1]
                valuation = tuple(
                    (name, poly.shift(previous.duration)) for name, poly in previous.valuation
                )
            else:
                valuation = tuple((name, self._random_poly(rng, name)) for name in self.variables)
            segments.append(Segment(duration, valuation))
        return TimedTrace.canonical(segments)

    def shrink(self, x: TimedTrace) -> Iterator[TimedTrace]:
        segments = x.segments
        if not segments:
            return
        yield TimedTrace()
        if len(segments) > 1:
            yield TimedTrace.canonical(segments[:-1])
            yield TimedTrace.canonical(segments[1:])
        smallest = min(self.durations)
        for i, s in enumerate(segments):
            if s.duration > smallest:
                shorter = Segment(smallest, s.valuation)
                yield TimedTrace.canonical(segments[:i] + (shorter,) + segments[i + 1:])
            for j, (name, poly) in enumerate(s.valuation):
                if poly.coefficients:
                    lowered = Poly(poly.coefficients[:-1])
                    valuation = s.valuation[:j] + ((name, lowered),) + s.valuation[j + 1:]
                    yield TimedTrace.canonical(
                        segments[:i] + (Segment(s.duration, valuation),) + segments[i + 1:]
                    )

    def size(self, x: TimedTrace) -> Any:
        return (len(x.segments), x.end)

    def is_trace(self, value: Any) -> bool:
        return isinstance(value, TimedTrace)

    def validate(self, x: TimedTrace) -> bool:
        if not isinstance(x, TimedTrace) or not well_formed(x.segments):
            return False
        if not x.is_empty and x.variables != self.variables:
            return False
        return all(
            poly.is_constant
            for s in x.segments
            for name, poly in s.valuation
            if name in self.discrete
        )

    def to_json(self, x: TimedTrace) -> Any:
        return {
            "vars": list(x.variables or self.variables),
            "segments": [
                {
                    "duration": format_rat(s.duration),
                    "valuation": {
                        name: [format_rat(c) for c in poly.coefficients]
                        for name, poly in s.valuation
                    },
                }
                for s in x.segments
            ],
        }

    def from_json(self, data: Any) -> TimedTrace:
        if not isinstance(data, dict) or "segments" not in data:
            raise InvalidTrace(self.name, f"expected {{vars, segments}}, got {data!r}")
        declared = sorted(data.get("vars", self.variables))
        segments = []
        for raw in data["segments"]:
            try:
                duration, coefficients = raw["duration"], raw["valuation"]
                items = coefficients.items()
            except (KeyError, TypeError, AttributeError) as e:
                raise InvalidTrace(self.name, f"segment {raw!r} needs a duration and a valuation object") from e
            duration = nonneg_rat(duration)
            if duration == 0:
                raise InvalidTrace(self.name, "segment durations must be positive")
            valuation = {
                name: Poly(tuple(parse_rat(c) for c in coeffs))
                for name, coeffs in items
            }
            if sorted(valuation) != declared:
                raise InvalidTrace(
                    self.name, f"segment variables {sorted(valuation)} differ from {declared}"
                )
            segments.append(Segment.of(duration, valuation))
        trace = TimedTrace.canonical(segments)
        if not self.validate(trace):
            raise InvalidTrace(self.name, f"{trace} is not a valid trace of this model")
        return trace
