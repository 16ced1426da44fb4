"""
Exact rational arithmetic for the binomial identities behind S_m.

Everything here is computed with ``Fraction`` so that identities are checked
as exact equalities. Floats only appear in ``chebyshev_eval``, which exists
for the pointwise trigonometric check.
"""

import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from satotate.errors import InvalidArgumentError

# Canonical arbitrary-precision rational: numerator/denominator in lowest terms,
# positive denominator, zero stored as 0/1.
ExactRational = Fraction


def as_exact(value: int | Rational) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, Rational):
        raise InvalidArgumentError(f"expected an integer or rational, got {value!r}")
    return Fraction(value)


def _require_int(name: str, value: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvalidArgumentError(f"{name} must be an integer, got {value!r}")
    return value


# ─────────────────────────────────────────────────────────────────────────────
# GENERALISED BINOMIAL
# ─────────────────────────────────────────────────────────────────────────────

def binomial_general(top: int | Rational, bottom: int) -> Fraction:
    """
    Binomial coefficient with a rational top and an integer bottom.

    Falling-factorial product over bottom! for bottom >= 1, one for bottom == 0
    and zero for negative bottom. For integer tops this vanishes when
    0 <= top < bottom.
    """
    _require_int("bottom", bottom)
    top = as_exact(top)
    if bottom < 0:
        return Fraction(0)
    if bottom == 0:
        return Fraction(1)
    if top.denominator == 1:
        n = top.numerator
        if n >= 0:
            return Fraction(math.comb(n, bottom))
        # C(n, k) = (-1)^k C(k - n - 1, k) for negative integer n
        sign = -1 if bottom % 2 else 1
        return Fraction(sign * math.comb(bottom - n - 1, bottom))
    numerator = 1
    denominator = 1
    for j in range(bottom):
        term = top - j
        numerator *= term.numerator
        denominator *= term.denominator
    return Fraction(numerator, denominator * math.factorial(bottom))


# ─────────────────────────────────────────────────────────────────────────────
# THE SUM S_m
# ─────────────────────────────────────────────────────────────────────────────

def s_m_direct(m: int) -> Fraction:
    """Sum_{r=0}^{m} (-1)^r C(m,r) C(m+r,r) / ((r+1)(m+r)), exactly."""
    _require_int("m", m)
    if m < 1:
        raise InvalidArgumentError(f"S_m is defined for m >= 1, got {m}")
    # integer numerators over one common denominator, reduced once
    denominators = [(r + 1) * (m + r) for r in range(m + 1)]
    common = math.lcm(*denominators)
    total = 0
    for r, d in enumerate(denominators):
        term = math.comb(m, r) * math.comb(m + r, r) * (common // d)
        total += -term if r % 2 else term
    return Fraction(total, common)


def s_m_rewritten(m: int) -> Fraction:
    """
    S_m after absorbing (m+1)/(m+1):
    1/(m(m+1)) * Sum_r (-1)^r C(m+1, r+1) C(m-1+r, m-1).
    """
    _require_int("m", m)
    if m < 1:
        raise InvalidArgumentError(f"S_m is defined for m >= 1, got {m}")
    total = 0
    for r in range(m + 1):
        term = math.comb(m + 1, r + 1) * math.comb(m - 1 + r, m - 1)
        total += -term if r % 2 else term
    return Fraction(total, m * (m + 1))


def s_m_completed(m: int) -> Fraction:
    """
    S_m with the u = 0 term C(m-2, m-1) added back, which is zero once m >= 2:
    -1/(m(m+1)) * Sum_{u=0}^{m+1} (-1)^u C(m+1, u) C(m-2+u, m-1).
    """
    _require_int("m", m)
    if m < 2:
        raise InvalidArgumentError(f"the completed sum needs m >= 2, got {m}")
    total = Fraction(0)
    for u in range(m + 2):
        term = math.comb(m + 1, u) * binomial_general(m - 2 + u, m - 1)
        total += -term if u % 2 else term
    return -total / (m * (m + 1))


# ─────────────────────────────────────────────────────────────────────────────
# CONVOLUTION LEMMAS
# ─────────────────────────────────────────────────────────────────────────────

def vandermonde_residual(
    r: int | Rational, s: int | Rational, m: int, n: int
) -> Fraction:
    """
    Sum_k C(r, m+k) C(s, n-k) - C(r+s, m+n).

    Both factors vanish for a negative bottom, so only m+k >= 0 and n-k >= 0
    contribute: k runs over [-m, n] whatever r and s are.
    """
    _require_int("m", m)
    _require_int("n", n)
    r, s = as_exact(r), as_exact(s)
    lhs = sum(
        (binomial_general(r, m + k) * binomial_general(s, n - k) for k in range(-m, n + 1)),
        Fraction(0),
    )
    return lhs - binomial_general(r + s, m + n)


def alternating_lemma_residual(ell: int, m: int, s: int, n: int) -> Fraction:
    """
    Sum_k (-1)^k C(ell, m+k) C(s+k, n) - (-1)^(ell+m) C(s-m, n-ell)
    with k restricted to 0 <= m+k <= ell.
    """
    for name, value in (("ell", ell), ("m", m), ("s", s)):
        _require_int(name, value)
        if value < 0:
            raise InvalidArgumentError(f"{name} must be non-negative, got {value}")
    _require_int("n", n)
    lhs = Fraction(0)
    for k in range(-m, ell - m + 1):
        term = math.comb(ell, m + k) * binomial_general(s + k, n)
        lhs += -term if k % 2 else term
    rhs = binomial_general(s - m, n - ell)
    return lhs - (-rhs if (ell + m) % 2 else rhs)


def catalan(r: int) -> int:
    _require_int("r", r)
    if r < 0:
        raise InvalidArgumentError(f"Catalan numbers need r >= 0, got {r}")
    return math.comb(2 * r, r) // (r + 1)


# ─────────────────────────────────────────────────────────────────────────────
# EXPANSION OF 2cos(2m theta) IN POWERS OF 2cos(theta)
# ─────────────────────────────────────────────────────────────────────────────

@lru_cache(maxsize=256)
def _chebyshev_coeffs(m: int) -> tuple[Fraction, ...]:
    coeffs = [Fraction(2 if m % 2 == 0 else -2)]
    product = 1
    for r in range(1, m + 1):
        product *= m * m - (r - 1) * (r - 1)
        c_2r = Fraction(math.factorial(2 * r), 2)
        sign = 1 if (r + m) % 2 == 0 else -1
        coeffs.append(sign * product / c_2r)
    return tuple(coeffs)


def chebyshev_coeffs(m: int) -> list[Fraction]:
    """
    [c_{2m,0}, c_{2m,2}, ..., c_{2m,2m}] with
    2cos(2m theta) = Sum_r c_{2m,2r} (2cos theta)^{2r}.

    m = 0 is rejected.
    """
    _require_int("m", m)
    if m < 1:
        raise InvalidArgumentError(f"the expansion is defined for m >= 1, got {m}")
    return list(_chebyshev_coeffs(m))


def chebyshev_coeffs_closed(m: int) -> list[Fraction]:
    """Same coefficients from (-1)^(m+r) m (m+r-1)! / ((m-r)! c_{2r})."""
    _require_int("m", m)
    if m < 1:
        raise InvalidArgumentError(f"the expansion is defined for m >= 1, got {m}")
    coeffs = [Fraction((-1) ** m * 2)]
    for r in range(1, m + 1):
        c_2r = Fraction(math.factorial(2 * r), 2)
        value = Fraction(m * math.factorial(m + r - 1), math.factorial(m - r)) / c_2r
        coeffs.append(value if (m + r) % 2 == 0 else -value)
    return coeffs


def coefficient_mass(m: int) -> float:
    """Sum_r |c_{2m,2r}| 2^{2r}, the scale of the float evaluation error."""
    return float(sum(abs(c) * 4**r for r, c in enumerate(_chebyshev_coeffs(m))))


def chebyshev_eval(m: int, y: float) -> float:
    """Evaluate Sum_r c_{2m,2r} y^{2r} by Horner's rule in y^2."""
    if abs(y) > 2.0:
        raise InvalidArgumentError(f"|y| must be at most 2, got {y}")
    coeffs = chebyshev_coeffs(m)
    y2 = y * y
    value = 0.0
    for c in reversed(coeffs):
        value = value * y2 + float(c)
    return value


def semicircle_main_term(m: int) -> Fraction:
    """
    Sum_r Catalan(r) c_{2m,2r}: the limit of (1/V) Sum 2cos(2m theta_n) when
    every moment sits at its Catalan value. Equals (-1)^m 2m S_m.
    """
    return sum(
        (catalan(r) * c for r, c in enumerate(chebyshev_coeffs(m))), Fraction(0)
    )
