from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Tuple, Union

Number = Union[int, Fraction]


def _normalize(coefficients: Iterable[Number]) -> Tuple[Fraction, ...]:
    """Strip trailing zero coefficients; the zero polynomial is empty."""
    coeffs = [Fraction(c) for c in coefficients]
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class Poly:
    """A polynomial with exact rational coefficients, constant term first."""

    coefficients: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _normalize(self.coefficients))

    @classmethod
    def of(cls, *coefficients: Number) -> "Poly":
        return cls(tuple(Fraction(c) for c in coefficients))

    @classmethod
    def constant(cls, value: Number) -> "Poly":
        return cls((Fraction(value),))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_constant(self) -> bool:
        return len(self.coefficients) <= 1

    def __call__(self, t: Number) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coefficients):
            result = result * t + c
        return result

    def shift(self, d: Number) -> "Poly":
        """The polynomial t ↦ p(t + d), by Horner's scheme over (t + d)."""
        d = Fraction(d)
        result: list = []
        for c in reversed(self.coefficients):
            # result := result · (t + d) + c
            shifted = [Fraction(0)] * (len(result) + 1)
            for i, r in enumerate(result):
                shifted[i] += r * d
                shifted[i + 1] += r
            shifted[0] += c
            result = shifted
        return Poly(tuple(result))

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for power, c in enumerate(self.coefficients):
            if c == 0:
                continue
            if power == 0:
                terms.append(str(c))
            elif power == 1:
                terms.append(f"{c}·t")
            else:
                terms.append(f"{c}·t^{power}")
        return " + ".join(terms)
