"""
One text file per prime:

    p 11 V 110
    -6 2
    ...

Header ``p <prime> V <count>`` followed by ``<t> <count>`` lines sorted by t.
"""

import logging
from pathlib import Path

from pydantic import ValidationError

from satotate.curve_family import FamilyParams, TraceHistogram
from satotate.errors import CacheError

logger = logging.getLogger(__name__)


def cache_path(cache_dir: Path, p: int) -> Path:
    return Path(cache_dir) / f"traces_p{p:05d}.txt"


def dumps_histogram(hist: TraceHistogram) -> str:
    lines = [f"p {hist.p} V {hist.V_p}"]
    lines.extend(f"{t} {n}" for t, n in sorted(hist.items()))
    return "\n".join(lines) + "\n"


def loads_histogram(text: str) -> TraceHistogram:
    """Parse and fully validate a cache file body."""
    lines = text.splitlines()
    if not lines:
        raise CacheError("empty cache file")
    header = lines[0].split()
    if len(header) != 4 or header[0] != "p" or header[2] != "V":
        raise CacheError(f"bad header line: {lines[0]!r}")
    try:
        p, declared = int(header[1]), int(header[3])
        counts: dict[int, int] = {}
        for line in lines[1:]:
            t, n = (int(field) for field in line.split())
            if t in counts:
                raise CacheError(f"duplicate bucket {t}")
            counts[t] = n
        params = FamilyParams(p=p)
        if declared != params.V_p:
            raise CacheError(f"header declares V = {declared}, expected {params.V_p}")
        return TraceHistogram(params=params, counts=counts)
    except (ValueError, ValidationError) as e:
        raise CacheError(str(e)) from e


def save_histogram(cache_dir: Path, hist: TraceHistogram) -> Path:
    path = cache_path(cache_dir, hist.p)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(dumps_histogram(hist), encoding="ascii")
    tmp.replace(path)
    return path


def load_histogram(cache_dir: Path, p: int) -> TraceHistogram | None:
    """Cached histogram for ``p``; None when absent. Corrupt files are discarded."""
    path = cache_path(cache_dir, p)
    if not path.exists():
        return None
    try:
        hist = loads_histogram(path.read_text(encoding="ascii"))
        if hist.p != p:
            raise CacheError(f"file holds p = {hist.p}")
        return hist
    except (OSError, UnicodeDecodeError, CacheError) as e:
        logger.warning("discarding cache %s: %s", path, e)
    try:
        path.unlink(missing_ok=True)
    except OSError as e:
        logger.error("could not remove cache %s: %s", path, e)
    return None
