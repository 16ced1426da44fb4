"""Load-or-compute TraceHistograms for a list of primes."""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict

from satotate.cache import load_histogram, save_histogram
from satotate.curve_family import TraceHistogram, family_histogram
from satotate.errors import MissingDataError

logger = logging.getLogger(__name__)


class ScanResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    p: int
    histogram: TraceHistogram
    source: Literal["cache", "computed"]
    seconds: float
    error: str | None = None


def _timed_scan(p: int, use_twists: bool, workers: int = 1) -> tuple[int, TraceHistogram, float]:
    start = time.perf_counter()
    hist = family_histogram(p, workers=workers, use_twists=use_twists)
    return p, hist, time.perf_counter() - start


def scan_primes(
    primes: list[int],
    cache_dir: Path,
    workers: int = 1,
    compute_missing: bool = True,
    use_twists: bool = False,
) -> list[ScanResult]:
    """
    Histograms for ``primes`` in ascending order. Cached files are reused;
    the rest are computed one prime per job and written back. A failed write
    is recorded on that prime's result and the sweep carries on.
    """
    results: dict[int, ScanResult] = {}
    missing: list[int] = []
    for p in sorted(set(primes)):
        start = time.perf_counter()
        hist = load_histogram(cache_dir, p)
        if hist is None:
            missing.append(p)
            continue
        results[p] = ScanResult(
            p=p, histogram=hist, source="cache", seconds=time.perf_counter() - start
        )
        logger.info("p=%d loaded from cache", p)

    if missing and not compute_missing:
        raise MissingDataError(missing)

    if workers > 1 and len(missing) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            computed = list(pool.map(_timed_scan, missing, [use_twists] * len(missing)))
    else:
        # a lone missing prime splits its a-coordinate across threads
        computed = [_timed_scan(p, use_twists, workers) for p in missing]

    for p, hist, seconds in computed:
        error = None
        try:
            save_histogram(cache_dir, hist)
        except OSError as e:
            error = f"could not write cache: {e}"
            logger.error("p=%d %s", p, error)
        logger.info("p=%d computed in %.3fs", p, seconds)
        results[p] = ScanResult(p=p, histogram=hist, source="computed", seconds=seconds, error=error)

    return [results[p] for p in sorted(results)]
