"""
Report rows and their CSV / JSON emission.

Columns: p,V_p,kind,m_or_R,interval_lo,interval_hi,M,value,bound,ratio,exact
Exact rationals render as 15 significant digits plus ``num/den`` in ``exact``.
"""

import csv
import io
import json
import logging
import random
from collections.abc import Iterable
from fractions import Fraction
from pathlib import Path

import mpmath
from pydantic import BaseModel, ConfigDict

from satotate.curve_family import TraceHistogram, angles
from satotate.equidistribution import (
    SATO_TATE,
    DiscrepancyReport,
    Interval,
    discrepancy_report,
    empirical_constant,
    expsum_error_scale,
    expsum_exact,
    expsum_float,
    moment_error_scale,
    moment_identity_residual,
    moment_report,
    uniform_measure,
)
from satotate.exact_kernel import alternating_lemma_residual, s_m_direct, vandermonde_residual
from satotate.hypergeometric import s_m_hyper

logger = logging.getLogger(__name__)

COLUMNS = [
    "p", "V_p", "kind", "m_or_R", "interval_lo", "interval_hi",
    "M", "value", "bound", "ratio", "exact",
]

FLOAT_SLACK = 1e-6
UNIFORM = uniform_measure()


class ReportRow(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int | None = None
    V_p: int | None = None
    kind: str
    m_or_R: int | None = None
    interval_lo: str = ""
    interval_hi: str = ""
    M: int | None = None
    value: str = ""
    bound: str = ""
    ratio: str = ""
    exact: str = ""


def render(x: Fraction | int | float, digits: int = 15) -> str:
    """Decimal string at ``digits`` significant digits; exact inputs stay exact until here."""
    with mpmath.workdps(digits + 10):
        if isinstance(x, Fraction):
            value = mpmath.mpf(x.numerator) / x.denominator
        else:
            value = mpmath.mpf(x)
        return mpmath.nstr(value, digits)


def render_exact(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ─────────────────────────────────────────────────────────────────────────────
# IDENTITY SUITE
# ─────────────────────────────────────────────────────────────────────────────

def identity_rows(max_m: int, trials: int = 500, seed: int = 0) -> tuple[list[ReportRow], list[str]]:
    rows: list[ReportRow] = []
    failures: list[str] = []
    for m in range(1, max_m + 1):
        direct, hyper = s_m_direct(m), s_m_hyper(m)
        expected = Fraction(1, 2) if m == 1 else Fraction(0)
        if direct != expected:
            failures.append(f"S_{m} = {direct}, expected {expected}")
        if hyper != direct:
            failures.append(f"S_{m}: hypergeometric route {hyper} != direct {direct}")
        rows.append(ReportRow(kind="s_m", m_or_R=m, value=render(direct), exact=render_exact(direct)))
        rows.append(ReportRow(kind="s_m_hyper", m_or_R=m, value=render(hyper), exact=render_exact(hyper)))

    rng = random.Random(seed)
    bad_vandermonde = 0
    for _ in range(trials):
        args = (rng.randint(-20, 20), rng.randint(-20, 20), rng.randint(-5, 10), rng.randint(-5, 10))
        if vandermonde_residual(*args) != 0:
            bad_vandermonde += 1
            failures.append(f"Vandermonde residual non-zero at (r, s, m, n) = {args}")
    bad_alternating = 0
    for _ in range(trials):
        args = (rng.randint(0, 15), rng.randint(0, 15), rng.randint(0, 15), rng.randint(-3, 30))
        if alternating_lemma_residual(*args) != 0:
            bad_alternating += 1
            failures.append(f"alternating lemma residual non-zero at (l, m, s, n) = {args}")
    rows.append(ReportRow(kind="vandermonde", m_or_R=trials, value=str(bad_vandermonde)))
    rows.append(ReportRow(kind="alternating_lemma", m_or_R=trials, value=str(bad_alternating)))
    return rows, failures


# ─────────────────────────────────────────────────────────────────────────────
# PER-PRIME ROWS
# ─────────────────────────────────────────────────────────────────────────────

def moment_rows(hist: TraceHistogram, max_R: int, c: float, epsilon: float) -> list[ReportRow]:
    rows = []
    for R in range(max_R + 1):
        report = moment_report(hist, R)
        scale = moment_error_scale(hist.V_p, R, c, epsilon)
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="moment", m_or_R=R,
                value=render(report.empirical),
                bound=str(report.catalan_target),
                ratio=render(report.deviation / scale),
                exact=render_exact(report.empirical),
            )
        )
    return rows


def expsum_rows(hist: TraceHistogram, max_m: int, c: float, epsilon: float) -> tuple[list[ReportRow], list[str]]:
    rows: list[ReportRow] = []
    failures: list[str] = []
    sample = angles(hist)
    for m in range(1, max_m + 1):
        exact = expsum_exact(hist, m)
        expected = hist.V_p * SATO_TATE.coefficient(m)
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="expsum_exact", m_or_R=m,
                value=render(exact),
                bound=render(expected),
                ratio=render(abs(exact - expected) / hist.V_p),
                exact=render_exact(exact),
            )
        )
        real, imag = expsum_float(sample, m)
        gap = abs(real - float(exact))
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="expsum_float", m_or_R=m,
                value=render(real), bound=render(imag), ratio=render(gap / hist.V_p),
            )
        )
        if gap > FLOAT_SLACK * hist.V_p:
            failures.append(f"p={hist.p} m={m}: float and exact exponential sums differ by {gap:.3g}")
        residual = moment_identity_residual(hist, m)
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="moment_identity", m_or_R=m,
                value=render(residual), bound="0", exact=render_exact(residual),
            )
        )
        if residual != 0:
            failures.append(f"p={hist.p} m={m}: moment identity residual {residual}")
        logger.debug("p=%d m=%d error scale %.3g", hist.p, m, expsum_error_scale(hist.V_p, m, c, epsilon))
    return rows, failures


def discrepancy_rows(
    hist: TraceHistogram, intervals: Iterable[Interval], c: float, epsilon: float
) -> tuple[list[ReportRow], list[DiscrepancyReport], list[str]]:
    rows: list[ReportRow] = []
    reports: list[DiscrepancyReport] = []
    failures: list[str] = []
    for interval in intervals:
        report = discrepancy_report(hist, interval, SATO_TATE, None, c, epsilon)
        reports.append(report)
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="discrepancy",
                interval_lo=render(interval.lo), interval_hi=render(interval.hi),
                M=report.M,
                value=render(report.measured),
                bound=render(report.et_bound),
                ratio=render(report.ratio),
            )
        )
        if report.measured > report.et_bound + FLOAT_SLACK * hist.V_p:
            failures.append(
                f"p={hist.p} I={interval.label()}: discrepancy {report.measured:.6g} "
                f"exceeds Erdos-Turan bound {report.et_bound:.6g}"
            )
        # same interval against Lebesgue measure, reported for comparison only
        baseline = discrepancy_report(hist, interval, UNIFORM, report.M, c, epsilon)
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="discrepancy_uniform",
                interval_lo=render(interval.lo), interval_hi=render(interval.hi),
                M=baseline.M,
                value=render(baseline.measured),
                bound=render(baseline.et_bound),
                ratio=render(baseline.ratio),
            )
        )
    return rows, reports, failures


def trend_row(reports: list[DiscrepancyReport]) -> ReportRow:
    return ReportRow(kind="trend", value=render(empirical_constant(reports), 6))


# ─────────────────────────────────────────────────────────────────────────────
# OUTPUT
# ─────────────────────────────────────────────────────────────────────────────

def _cell(value: object) -> str:
    return "" if value is None else str(value)


def format_csv(rows: list[ReportRow], meta: dict) -> str:
    buffer = io.StringIO()
    buffer.write("# " + " ".join(f"{k}={v}" for k, v in meta.items()) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        data = row.model_dump()
        writer.writerow([_cell(data[col]) for col in COLUMNS])
    return buffer.getvalue()


def format_json(rows: list[ReportRow], failures: list[str], meta: dict) -> str:
    payload = {
        "meta": meta,
        "rows": [row.model_dump() for row in rows],
        "failures": failures,
    }
    return json.dumps(payload, indent=2) + "\n"


def emit(
    rows: list[ReportRow], failures: list[str], meta: dict, fmt: str, out: Path | None
) -> str:
    text = format_json(rows, failures, meta) if fmt == "json" else format_csv(rows, meta)
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text, encoding="utf-8")
    return text

