"""
Command line front end.

    satotate identities --max-m 500
    satotate scan --primes 5..199
    satotate report --primes 53,101,199 --format json --out report.json
"""

import logging
from pathlib import Path

import click
from pydantic import ValidationError
from rich.console import Console
from rich.table import Table

from satotate import __version__
from satotate.config import (
    DEFAULT_INTERVALS,
    RunConfig,
    configure_logging,
    load_settings,
    parse_intervals,
    parse_primes,
)
from satotate.errors import InvalidArgumentError, MissingDataError
from satotate.reports import (
    ReportRow,
    discrepancy_rows,
    emit,
    expsum_rows,
    identity_rows,
    moment_rows,
    trend_row,
)
from satotate.sweep import ScanResult, scan_primes

logger = logging.getLogger(__name__)

# click itself exits with 2 on usage errors
EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_MISSING_DATA = 3

console = Console(stderr=True)


# ─────────────────────────────────────────────────────────────────────────────
# HELPERS
# ─────────────────────────────────────────────────────────────────────────────

def _primes_option(f):
    return click.option("--primes", "primes_text", required=True, help="e.g. 5..199 or 53,101,199")(f)


def _build_config(ctx: click.Context, primes_text: str, **fields) -> RunConfig:
    try:
        primes = parse_primes(primes_text)
        if "intervals" in fields:
            fields["intervals"] = parse_intervals(fields["intervals"])
    except InvalidArgumentError as e:
        raise click.BadParameter(str(e)) from e
    try:
        return RunConfig(primes=primes, **ctx.obj, **fields)
    except ValidationError as e:
        raise click.UsageError(str(e)) from e


def _scan(ctx: click.Context, config: RunConfig) -> list[ScanResult]:
    try:
        return scan_primes(
            config.primes,
            config.cache_dir,
            workers=config.workers,
            compute_missing=config.compute_missing,
            use_twists=config.use_twists,
        )
    except MissingDataError as e:
        console.print(f"[red]error:[/red] {e}")
        ctx.exit(EXIT_MISSING_DATA)


def _meta(command: str, config: RunConfig, **extra) -> dict:
    meta = {
        "satotate": __version__,
        "command": command,
        "primes": ",".join(str(p) for p in config.primes),
        "c": config.c,
        "epsilon": config.epsilon,
    }
    meta.update(extra)
    return meta


def _finish(ctx: click.Context, rows: list[ReportRow], failures: list[str], meta: dict, config: RunConfig) -> None:
    text = emit(rows, failures, meta, config.format, config.out)
    if config.out is None:
        click.echo(text, nl=False)
    for failure in failures:
        logger.error(failure)
    ctx.exit(EXIT_CHECK_FAILED if failures else EXIT_OK)


# ─────────────────────────────────────────────────────────────────────────────
# COMMAND GROUP
# ─────────────────────────────────────────────────────────────────────────────

@click.group()
@click.version_option(__version__, prog_name="satotate")
@click.option("--cache-dir", type=click.Path(path_type=Path), default=None,
              help="Histogram cache directory [env SATOTATE_CACHE_DIR].")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Parallel jobs.")
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv")
@click.option("--out", type=click.Path(path_type=Path), default=None, help="Write rows here instead of stdout.")
@click.option("--c", "c_exponent", type=float, default=None, help="Hecke trace exponent c in [0, 1).")
@click.option("--epsilon", type=float, default=None)
@click.option("--no-compute", is_flag=True, help="Fail instead of scanning primes missing from the cache.")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING ...")
@click.pass_context
def main(ctx, cache_dir, workers, fmt, out, c_exponent, epsilon, no_compute, log_level):
    """Sato-Tate equidistribution checks for the family of all elliptic curves mod p."""
    settings = load_settings()
    configure_logging(log_level or settings.log_level)
    ctx.obj = {
        "cache_dir": cache_dir or settings.cache_dir,
        "workers": workers or settings.workers,
        "format": fmt,
        "out": out,
        "c": settings.c if c_exponent is None else c_exponent,
        "epsilon": settings.epsilon if epsilon is None else epsilon,
        "compute_missing": not no_compute,
    }


@main.command()
@click.option("--max-m", type=click.IntRange(min=1), default=500, show_default=True)
@click.option("--trials", type=click.IntRange(min=0), default=500, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def identities(ctx, max_m, trials, seed):
    """Check S_m by the direct sum and by 2F1, plus the convolution lemmas."""
    rows, failures = identity_rows(max_m, trials, seed)
    meta = {"satotate": __version__, "command": "identities", "max_m": max_m, "trials": trials, "seed": seed}
    text = emit(rows, failures, meta, ctx.obj["format"], ctx.obj["out"])
    if ctx.obj["out"] is None:
        click.echo(text, nl=False)
    status = "[red]FAIL[/red]" if failures else "[green]pass[/green]"
    console.print(f"S_m for m <= {max_m}, {trials} Vandermonde and {trials} alternating-lemma trials: {status}")
    ctx.exit(EXIT_CHECK_FAILED if failures else EXIT_OK)


@main.command()
@_primes_option
@click.option("--twists", is_flag=True, help="Scan one curve per twist orbit.")
@click.pass_context
def scan(ctx, primes_text, twists):
    """Compute or load the trace histogram of every prime."""
    config = _build_config(ctx, primes_text, use_twists=twists)
    results = _scan(ctx, config)

    table = Table(title="trace histograms")
    for column in ("p", "V_p", "buckets", "source", "seconds"):
        table.add_column(column, justify="right")
    rows, failures = [], []
    for result in results:
        hist = result.histogram
        table.add_row(str(hist.p), str(hist.V_p), str(len(hist.counts)), result.source, f"{result.seconds:.3f}")
        rows.append(
            ReportRow(
                p=hist.p, V_p=hist.V_p, kind="histogram",
                value=str(sum(hist.counts.values())), bound=str(hist.V_p), ratio=str(len(hist.counts)),
            )
        )
        if result.error:
            failures.append(f"p={hist.p}: {result.error}")
    console.print(table)
    _finish(ctx, rows, failures, _meta("scan", config), config)


@main.command()
@_primes_option
@click.option("--max-r", "max_R", type=click.IntRange(min=0), default=3, show_default=True)
@click.pass_context
def moments(ctx, primes_text, max_R):
    """Moments M_p(2R) against the Catalan numbers."""
    config = _build_config(ctx, primes_text, max_R=max_R)
    rows = []
    for result in _scan(ctx, config):
        rows += moment_rows(result.histogram, max_R, config.c, config.epsilon)
    _finish(ctx, rows, [], _meta("moments", config, max_R=max_R), config)


@main.command()
@_primes_option
@click.option("--max-m", type=click.IntRange(min=1), default=8, show_default=True)
@click.pass_context
def expsum(ctx, primes_text, max_m):
    """Exact and floating exponential sums up to frequency max-m."""
    config = _build_config(ctx, primes_text, max_m=max_m)
    rows, failures = [], []
    for result in _scan(ctx, config):
        new_rows, new_failures = expsum_rows(result.histogram, max_m, config.c, config.epsilon)
        rows += new_rows
        failures += new_failures
    _finish(ctx, rows, failures, _meta("expsum", config, max_m=max_m), config)


@main.command()
@_primes_option
@click.option("--intervals", default=DEFAULT_INTERVALS, show_default=True, help="lo:hi,lo:hi,...")
@click.pass_context
def discrepancy(ctx, primes_text, intervals):
    """Measured discrepancy against the Erdos-Turan bound at the optimal M."""
    config = _build_config(ctx, primes_text, intervals=intervals)
    rows, failures = [], []
    for result in _scan(ctx, config):
        new_rows, _, new_failures = discrepancy_rows(result.histogram, config.intervals, config.c, config.epsilon)
        rows += new_rows
        failures += new_failures
    _finish(ctx, rows, failures, _meta("discrepancy", config, intervals=intervals), config)


@main.command()
@_primes_option
@click.option("--max-m", type=click.IntRange(min=1), default=8, show_default=True)
@click.option("--max-r", "max_R", type=click.IntRange(min=0), default=3, show_default=True)
@click.option("--intervals", default=DEFAULT_INTERVALS, show_default=True)
@click.pass_context
def report(ctx, primes_text, max_m, max_R, intervals):
    """Every per-prime row plus the empirical constant sup D log(V_p) / V_p."""
    config = _build_config(ctx, primes_text, max_m=max_m, max_R=max_R, intervals=intervals)
    rows, failures, reports = [], [], []
    for result in _scan(ctx, config):
        hist = result.histogram
        rows += moment_rows(hist, max_R, config.c, config.epsilon)
        new_rows, new_failures = expsum_rows(hist, max_m, config.c, config.epsilon)
        rows += new_rows
        failures += new_failures
        new_rows, new_reports, new_failures = discrepancy_rows(hist, config.intervals, config.c, config.epsilon)
        rows += new_rows
        reports += new_reports
        failures += new_failures
    rows.append(trend_row(reports))
    meta = _meta("report", config, max_m=max_m, max_R=max_R, intervals=intervals)
    _finish(ctx, rows, failures, meta, config)


if __name__ == "__main__":
    main()
