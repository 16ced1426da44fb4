"""
Sato-Tate measure, moments, exponential sums and Erdos-Turan discrepancy bounds
for a TraceHistogram.

The headline exponential sums are exact: Sum_n cos(2m theta_n) is rebuilt from
the integer power sums Sum t^{2r} through the expansion of 2cos(2m theta) in
powers of 2cos(theta). The arccos route is kept only as a cross-check.
"""

import logging
import math
from collections.abc import Callable, Iterable
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, model_validator

from satotate.curve_family import AngleSample, TraceHistogram
from satotate.errors import InvalidArgumentError
from satotate.exact_kernel import catalan, chebyshev_coeffs

logger = logging.getLogger(__name__)


# ─────────────────────────────────────────────────────────────────────────────
# MEASURES AND INTERVALS
# ─────────────────────────────────────────────────────────────────────────────

class Interval(BaseModel):
    """Half-open [lo, hi) inside [0, 1]."""

    model_config = ConfigDict(frozen=True)

    lo: float
    hi: float

    @model_validator(mode="after")
    def _ordered(self) -> "Interval":
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"need 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi})")
        return self

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def label(self) -> str:
        return f"[{self.lo:g},{self.hi:g})"


class MeasureSpec(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str
    density: Callable[[float], float]
    interval_mass: Callable[[Interval], float]
    fourier: dict[int, Fraction]
    sup_norm: float

    def coefficient(self, m: int) -> Fraction:
        return self.fourier.get(m, Fraction(0))


def st_density(x: float) -> float:
    return 2.0 * math.sin(math.pi * x) ** 2


def st_interval_mass(i: Interval) -> float:
    """Integral of 2sin^2(pi x) over [lo, hi)."""
    return i.length - (math.sin(2 * math.pi * i.hi) - math.sin(2 * math.pi * i.lo)) / (
        2 * math.pi
    )


SATO_TATE = MeasureSpec(
    name="sato_tate",
    density=st_density,
    interval_mass=st_interval_mass,
    fourier={0: Fraction(1), 1: Fraction(-1, 2), -1: Fraction(-1, 2)},
    sup_norm=2.0,
)


def uniform_measure() -> MeasureSpec:
    return MeasureSpec(
        name="uniform",
        density=lambda x: 1.0,
        interval_mass=lambda i: i.length,
        fourier={0: Fraction(1)},
        sup_norm=1.0,
    )


# ─────────────────────────────────────────────────────────────────────────────
# REPORT RECORDS
# ─────────────────────────────────────────────────────────────────────────────

class MomentReport(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    p: int
    R: int
    empirical: Fraction
    catalan_target: int
    deviation: float


class DiscrepancyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    V_p: int
    interval: Interval
    M: int
    N_I: int
    measured: float
    et_bound: float
    c_exponent: float
    epsilon: float

    @property
    def ratio(self) -> float:
        return self.measured / self.et_bound if self.et_bound else 0.0


# ─────────────────────────────────────────────────────────────────────────────
# MOMENTS AND EXPONENTIAL SUMS
# ─────────────────────────────────────────────────────────────────────────────

def empirical_moment(hist: TraceHistogram, R: int) -> Fraction:
    """M_p(2R) = Sum_t t^{2R} counts[t] / (p^R V_p); (2cos theta)^2 = t^2 / p."""
    if R < 0:
        raise InvalidArgumentError(f"moment order must be >= 0, got {R}")
    return Fraction(hist.even_power_sum(R), hist.p**R * hist.V_p)


def moment_report(hist: TraceHistogram, R: int) -> MomentReport:
    empirical = empirical_moment(hist, R)
    target = catalan(R)
    return MomentReport(
        p=hist.p,
        R=R,
        empirical=empirical,
        catalan_target=target,
        deviation=float(abs(empirical - target)),
    )


def expsum_exact(hist: TraceHistogram, m: int) -> Fraction:
    """Sum_n cos(2m theta_n) = (1/2) Sum_r c_{2m,2r} Sum_t t^{2r} counts[t] / p^r."""
    if m < 1:
        raise InvalidArgumentError(f"frequency must be >= 1, got {m}")
    total = Fraction(0)
    for r, c in enumerate(chebyshev_coeffs(m)):
        total += c * Fraction(hist.even_power_sum(r), hist.p**r)
    return total / 2


def expsum_float(sample: AngleSample, m: int) -> tuple[float, float]:
    """(Sum cos(2 pi m x_n), Sum sin(2 pi m x_n)) with fsum compensation."""
    real = math.fsum(n * math.cos(2 * math.pi * m * x) for x, n in sample.points)
    imag = math.fsum(n * math.sin(2 * math.pi * m * x) for x, n in sample.points)
    return real, imag


def moment_identity_residual(hist: TraceHistogram, m: int) -> Fraction:
    """(2/V_p) expsum_exact - Sum_r c_{2m,2r} M_p(2r); zero when both paths agree."""
    lhs = 2 * expsum_exact(hist, m) / hist.V_p
    rhs = sum(
        (c * empirical_moment(hist, r) for r, c in enumerate(chebyshev_coeffs(m))),
        Fraction(0),
    )
    return lhs - rhs


# ─────────────────────────────────────────────────────────────────────────────
# DISCREPANCY
# ─────────────────────────────────────────────────────────────────────────────

def count_in_interval(hist: TraceHistogram, i: Interval) -> int:
    """
    N_I: x in [lo, hi) iff 2sqrt(p)cos(pi hi) < t <= 2sqrt(p)cos(pi lo).
    Comparison is a plain float test; ties are a measure-zero event.
    """
    scale = 2.0 * math.sqrt(hist.p)
    upper = scale * math.cos(math.pi * i.lo)
    lower = scale * math.cos(math.pi * i.hi)
    return sum(n for t, n in hist.items() if lower < t <= upper)


def discrepancy(hist: TraceHistogram, i: Interval, mu: MeasureSpec = SATO_TATE) -> float:
    return abs(count_in_interval(hist, i) - hist.V_p * mu.interval_mass(i))


def et_bound(
    hist: TraceHistogram, i: Interval, mu: MeasureSpec = SATO_TATE, M: int = 1
) -> float:
    """
    V_p ||mu|| / (M+1)
      + Sum_{1<=m<=M} (1/(M+1) + min(hi-lo, 1/(pi m))) |Sum_n e(m x_n) - V_p c_m|.

    The imaginary part of Sum e(m x_n) vanishes because the angles are
    symmetric about 1/2, so the exact cosine sum is the whole exponential sum.
    """
    if M < 1:
        raise InvalidArgumentError(f"cutoff M must be >= 1, got {M}")
    bound = hist.V_p * mu.sup_norm / (M + 1)
    for m in range(1, M + 1):
        weight = 1.0 / (M + 1) + min(i.length, 1.0 / (math.pi * m))
        deviation = abs(expsum_exact(hist, m) - hist.V_p * mu.coefficient(m))
        bound += weight * float(deviation)
    return bound


def optimal_M(V_p: int, c: float = 0.75, epsilon: float = 0.01) -> int:
    """max(1, floor((3 - c - epsilon)/6 * log V_p)), equalising both error terms."""
    if V_p < 2:
        raise InvalidArgumentError(f"V_p must be >= 2, got {V_p}")
    if not 0.0 <= c < 1.0:
        raise InvalidArgumentError(f"exponent c must lie in [0, 1), got {c}")
    if epsilon <= 0.0:
        raise InvalidArgumentError(f"epsilon must be positive, got {epsilon}")
    return max(1, math.floor((3.0 - c - epsilon) / 6.0 * math.log(V_p)))


def discrepancy_report(
    hist: TraceHistogram,
    i: Interval,
    mu: MeasureSpec = SATO_TATE,
    M: int | None = None,
    c: float = 0.75,
    epsilon: float = 0.01,
) -> DiscrepancyReport:
    if M is None:
        M = optimal_M(hist.V_p, c, epsilon)
    measured = discrepancy(hist, i, mu)
    bound = et_bound(hist, i, mu, M)
    logger.debug("p=%d I=%s M=%d D=%.6g bound=%.6g", hist.p, i.label(), M, measured, bound)
    return DiscrepancyReport(
        p=hist.p,
        V_p=hist.V_p,
        interval=i,
        M=M,
        N_I=count_in_interval(hist, i),
        measured=measured,
        et_bound=bound,
        c_exponent=c,
        epsilon=epsilon,
    )


# ─────────────────────────────────────────────────────────────────────────────
# ERROR SCALES (reported next to observed deviations, never asserted)
# ─────────────────────────────────────────────────────────────────────────────

def _saving(V_p: int, c: float, epsilon: float) -> float:
    return V_p ** (-(1.0 - c - epsilon) / 2.0)


def moment_error_scale(V_p: int, R: int, c: float = 0.75, epsilon: float = 0.01) -> float:
    return 4.0**R * _saving(V_p, c, epsilon)


def expsum_error_scale(V_p: int, m: int, c: float = 0.75, epsilon: float = 0.01) -> float:
    return m * m * 8.0**m * _saving(V_p, c, epsilon)


def empirical_constant(reports: Iterable[DiscrepancyReport]) -> float:
    """sup of D log(V_p) / V_p, the observed stand-in for the constant C."""
    return max(
        (r.measured * math.log(r.V_p) / r.V_p for r in reports),
        default=0.0,
    )
