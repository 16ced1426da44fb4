"""
Terminating 2F1 series and integer-argument Gamma ratios.

Second, independent route to S_m: every Gamma argument the derivation needs
is an integer, so factorials and Pochhammer products replace special functions.
"""

import math
from fractions import Fraction
from numbers import Rational

from pydantic import BaseModel, ConfigDict, model_validator

from satotate.errors import DivergentGammaError, InvalidArgumentError
from satotate.exact_kernel import as_exact


class GammaRatioValue(BaseModel):
    """Exact value of a Gamma ratio; ``is_zero_by_pole`` marks 1/Gamma(-k) = 0."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    is_zero_by_pole: bool = False

    @model_validator(mode="after")
    def _pole_means_zero(self) -> "GammaRatioValue":
        if self.is_zero_by_pole and self.value != 0:
            raise ValueError("a zero-by-pole value must be exactly 0")
        return self


def pochhammer(x: int, n: int) -> int:
    """Rising factorial x(x+1)...(x+n-1); the empty product is 1."""
    if n < 0:
        raise InvalidArgumentError(f"pochhammer length must be >= 0, got {n}")
    return math.prod(range(x, x + n))


def gamma_int(n: int) -> int:
    """Gamma(n) = (n-1)! for a positive integer n."""
    if n < 1:
        raise DivergentGammaError(f"Gamma({n}) sits on a pole")
    return math.factorial(n - 1)


def terminating_2f1(neg_m: int, b: int, c: int, z: int | Rational) -> Fraction:
    """
    2F1(-m, b; c; z) = Sum_{n=0}^{m} (-m)_n (b)_n / ((c)_n n!) z^n.

    The tail beyond n = m vanishes because (-m)_n does, so the formal infinite
    series and this finite sum agree.
    """
    if neg_m > 0:
        raise InvalidArgumentError(
            f"first parameter must be a non-positive integer for termination, got {neg_m}"
        )
    if c <= 0:
        raise InvalidArgumentError(f"c must be a positive integer, got {c}")
    z = as_exact(z)
    m = -neg_m
    total = Fraction(0)
    power = Fraction(1)
    for n in range(m + 1):
        coeff = Fraction(
            pochhammer(neg_m, n) * pochhammer(b, n), pochhammer(c, n) * math.factorial(n)
        )
        total += coeff * power
        power *= z
    return total


def gauss_value_at_1(a: int, b: int, c: int) -> GammaRatioValue:
    """
    Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), the value of 2F1(a, b; c; 1).

    A denominator argument on a pole makes the ratio exactly zero; a numerator
    argument on a pole is a genuine divergence and is rejected.
    """
    for arg in (c, c - a - b):
        if arg < 1:
            raise DivergentGammaError(
                f"numerator Gamma({arg}) diverges for (a, b, c) = ({a}, {b}, {c})"
            )
    if c - a < 1 or c - b < 1:
        return GammaRatioValue(value=Fraction(0), is_zero_by_pole=True)
    return GammaRatioValue(
        value=Fraction(
            gamma_int(c) * gamma_int(c - a - b), gamma_int(c - a) * gamma_int(c - b)
        )
    )


def chu_vandermonde(neg_m: int, b: int, c: int) -> Fraction:
    """(c-b)_m / (c)_m, the closed form of 2F1(-m, b; c; 1)."""
    if neg_m > 0 or c <= 0:
        raise InvalidArgumentError(
            f"need a non-positive first parameter and c >= 1, got ({neg_m}, {c})"
        )
    m = -neg_m
    return Fraction(pochhammer(c - b, m), pochhammer(c, m))


def s_m_hyper(m: int) -> Fraction:
    """
    S_m = Gamma(m) 2F1(-m, m; 2; 1) / (Gamma(2) Gamma(1+m))
        = Gamma(m) / (Gamma(1+m) Gamma(2+m) Gamma(2-m)).

    For m >= 2 the factor 1/Gamma(2-m) is zero by the pole; m = 1 gives 1/2.
    """
    if m < 1:
        raise InvalidArgumentError(f"S_m is defined for m >= 1, got {m}")
    gauss = gauss_value_at_1(-m, m, 2)
    return Fraction(gamma_int(m), gamma_int(2) * gamma_int(1 + m)) * gauss.value


def s_m_hyper_series(m: int) -> Fraction:
    """S_m from the terminating series itself rather than the Gauss value."""
    if m < 1:
        raise InvalidArgumentError(f"S_m is defined for m >= 1, got {m}")
    series = terminating_2f1(-m, m, 2, 1)
    return Fraction(gamma_int(m), gamma_int(2) * gamma_int(1 + m)) * series
