"""
The family of all elliptic curves y^2 = x^3 + ax + b over Z/pZ.

Traces of Frobenius are accumulated into a TraceHistogram, the multiset of
a_E(p) over every nonsingular pair (a, b). Every downstream statistic is a
function of that multiset.
"""

import logging
import math
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from functools import lru_cache

import numpy as np
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    computed_field,
    field_validator,
    model_validator,
)
from sympy import isprime

from satotate.errors import NotPrimeError, SatoTateError, SingularCurveError

logger = logging.getLogger(__name__)


def require_prime(p: int) -> int:
    if isinstance(p, bool) or not isinstance(p, int) or p < 5 or not isprime(p):
        raise NotPrimeError(p)
    return p


# ─────────────────────────────────────────────────────────────────────────────
# DATA TYPES
# ─────────────────────────────────────────────────────────────────────────────

class FamilyParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int

    @field_validator("p")
    @classmethod
    def _prime(cls, p: int) -> int:
        return require_prime(p)

    @computed_field
    @property
    def V_p(self) -> int:
        return self.p * (self.p - 1)


class TraceHistogram(BaseModel):
    """Multiplicity of each trace value t over the whole family at one prime."""

    model_config = ConfigDict(frozen=True)

    params: FamilyParams
    counts: dict[int, int] = Field(default_factory=dict)

    @field_validator("counts")
    @classmethod
    def _drop_empty(cls, counts: dict[int, int]) -> dict[int, int]:
        if any(n < 0 for n in counts.values()):
            raise ValueError("multiplicities must be non-negative")
        return {t: counts[t] for t in sorted(counts) if counts[t] > 0}

    @model_validator(mode="after")
    def _family_invariants(self) -> "TraceHistogram":
        p, total = self.params.p, sum(self.counts.values())
        if total != self.params.V_p:
            raise ValueError(f"histogram total {total} != V_p = {self.params.V_p}")
        for t, n in self.counts.items():
            if t * t > 4 * p:
                raise ValueError(f"trace {t} violates the Hasse bound at p = {p}")
            if self.counts.get(-t, 0) != n:
                raise ValueError(f"counts[{t}] != counts[{-t}] at p = {p}")
        return self

    @property
    def p(self) -> int:
        return self.params.p

    @property
    def V_p(self) -> int:
        return self.params.V_p

    def items(self) -> list[tuple[int, int]]:
        return list(self.counts.items())

    def even_power_sum(self, r: int) -> int:
        """Sum over the family of t^{2r}, an exact integer."""
        return sum(n * t ** (2 * r) for t, n in self.counts.items())


class AngleSample(BaseModel):
    """Normalized angles x = arccos(t / 2sqrt(p)) / pi with multiplicities."""

    model_config = ConfigDict(frozen=True)

    source: TraceHistogram
    points: tuple[tuple[float, int], ...]

    @property
    def cardinality(self) -> int:
        return sum(n for _, n in self.points)


# ─────────────────────────────────────────────────────────────────────────────
# POINT COUNTING
# ─────────────────────────────────────────────────────────────────────────────

@lru_cache(maxsize=64)
def legendre_table(p: int) -> tuple[int, ...]:
    """chi(x) for x = 0..p-1, marked from the squares y^2, y = 1..(p-1)/2."""
    require_prime(p)
    table = [-1] * p
    table[0] = 0
    for y in range(1, (p - 1) // 2 + 1):
        table[y * y % p] = 1
    return tuple(table)


def is_singular(a: int, b: int, p: int) -> bool:
    return (4 * a**3 + 27 * b**2) % p == 0


def curve_trace(a: int, b: int, p: int, table: tuple[int, ...] | None = None) -> int:
    """a_E(p) = -Sum_x chi(x^3 + ax + b) for a nonsingular (a, b)."""
    if table is None:
        table = legendre_table(p)
    if is_singular(a, b, p):
        raise SingularCurveError(a, b, p)
    return -sum(table[(x * x * x + a * x + b) % p] for x in range(p))


def point_count_bruteforce(a: int, b: int, p: int) -> int:
    """Affine solutions of y^2 = x^3 + ax + b by walking every (x, y)."""
    return sum(
        1 for x in range(p) for y in range(p) if (y * y - (x**3 + a * x + b)) % p == 0
    )


def bad_pair_count(p: int) -> int:
    require_prime(p)
    a = np.arange(p, dtype=np.int64)
    disc = (4 * (a**3 % p)[:, None] + 27 * (a * a % p)[None, :]) % p
    return int(np.count_nonzero(disc == 0))


# ─────────────────────────────────────────────────────────────────────────────
# FAMILY SCAN
# ─────────────────────────────────────────────────────────────────────────────

def _scan_rows(p: int, a_values: range) -> Counter:
    """Traces for every nonsingular (a, b) with a in ``a_values``."""
    chi = np.asarray(legendre_table(p), dtype=np.int64)
    x = np.arange(p, dtype=np.int64)
    b = np.arange(p, dtype=np.int64)
    cubes = x**3 % p
    counts: Counter = Counter()
    for a in a_values:
        rhs = (cubes + a * x) % p
        traces = -chi[(rhs[None, :] + b[:, None]) % p].sum(axis=1)
        good = (4 * a**3 + 27 * b * b) % p != 0
        values, mult = np.unique(traces[good], return_counts=True)
        counts.update(dict(zip(values.tolist(), mult.tolist())))
    logger.debug("p=%d rows %d..%d done", p, a_values.start, a_values.stop - 1)
    return counts


def _scan_twist_orbits(p: int) -> Counter:
    """
    One trace per orbit {(ac^2, bc^3) : c != 0}; the rest of the orbit gets
    chi(c) times it. Visits every pair once.
    """
    chi = legendre_table(p)
    seen = bytearray(p * p)
    counts: Counter = Counter()
    for a in range(p):
        for b in range(p):
            if seen[a * p + b] or is_singular(a, b, p):
                continue
            t = curve_trace(a, b, p, chi)
            for c in range(1, p):
                key = (a * c * c % p) * p + b * c * c * c % p
                if not seen[key]:
                    seen[key] = 1
                    counts[chi[c] * t] += 1
    return counts


def family_histogram(p: int, workers: int = 1, use_twists: bool = False) -> TraceHistogram:
    """
    Scan every (a, b) in (Z/p)^2, skipping the p singular pairs.

    With ``workers > 1`` the a-coordinate is split into contiguous chunks,
    each producing a private Counter; merging is order independent.
    """
    params = FamilyParams(p=require_prime(p))
    if use_twists:
        counts = _scan_twist_orbits(p)
    elif workers <= 1:
        counts = _scan_rows(p, range(p))
    else:
        step = math.ceil(p / workers)
        chunks = [range(lo, min(lo + step, p)) for lo in range(0, p, step)]
        counts = Counter()
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(lambda rows: _scan_rows(p, rows), chunks):
                counts.update(part)

    bad = p * p - sum(counts.values())
    if bad != p:
        raise SatoTateError(f"expected {p} singular pairs at p = {p}, found {bad}")
    return TraceHistogram(params=params, counts=dict(counts))


def angles(hist: TraceHistogram) -> AngleSample:
    scale = 2.0 * math.sqrt(hist.p)
    points = tuple(
        (math.acos(min(1.0, max(-1.0, t / scale))) / math.pi, n)
        for t, n in hist.items()
    )
    return AngleSample(source=hist, points=points)
