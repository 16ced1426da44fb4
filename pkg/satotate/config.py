"""Settings from the environment, run configuration, and logging setup."""

import logging
import os
from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from rich.console import Console
from rich.logging import RichHandler
from sympy import isprime

from satotate.equidistribution import Interval
from satotate.errors import InvalidArgumentError

DEFAULT_INTERVALS = "0:0.25,0:0.5,0.25:0.75"


class Settings(BaseSettings):
    """Defaults for the CLI; every field can be set as SATOTATE_<NAME>."""

    model_config = SettingsConfigDict(env_prefix="SATOTATE_", env_file=".env", extra="ignore")

    cache_dir: Path = Path(".satotate_cache")
    workers: int = Field(default_factory=lambda: os.cpu_count() or 1)
    c: float = 0.75
    epsilon: float = 0.01
    log_level: str = "INFO"


def load_settings() -> Settings:
    load_dotenv()
    return Settings()


# ─────────────────────────────────────────────────────────────────────────────
# ARGUMENT PARSING
# ─────────────────────────────────────────────────────────────────────────────

def _to_int(text: str, part: str) -> int:
    try:
        return int(text)
    except ValueError as e:
        raise InvalidArgumentError(f"cannot read prime range {part!r}") from e


def parse_primes(text: str) -> list[int]:
    """
    ``5..50`` keeps the primes >= 5 in the range; ``5,7,11`` lists them
    directly and rejects anything that is not a prime >= 5. Both forms mix.
    """
    primes: set[int] = set()
    for part in (s.strip() for s in text.split(",")):
        if not part:
            continue
        if ".." in part:
            lo_text, hi_text = part.split("..", 1)
            lo, hi = _to_int(lo_text, part), _to_int(hi_text, part)
            primes.update(n for n in range(max(lo, 5), hi + 1) if isprime(n))
        else:
            n = _to_int(part, part)
            if n < 5 or not isprime(n):
                raise InvalidArgumentError(f"{n} is not a prime >= 5")
            primes.add(n)
    if not primes:
        raise InvalidArgumentError(f"no primes >= 5 in {text!r}")
    return sorted(primes)


def parse_intervals(text: str) -> list[Interval]:
    intervals = []
    for part in (s.strip() for s in text.split(",")):
        if not part:
            continue
        try:
            lo, hi = (float(v) for v in part.split(":"))
            intervals.append(Interval(lo=lo, hi=hi))
        except ValueError as e:
            raise InvalidArgumentError(f"bad interval {part!r}, expected lo:hi") from e
    if not intervals:
        raise InvalidArgumentError("at least one interval is required")
    return intervals


# ─────────────────────────────────────────────────────────────────────────────
# RUN CONFIGURATION
# ─────────────────────────────────────────────────────────────────────────────

class RunConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    primes: list[int]
    max_m: int = 8
    max_R: int = 3
    intervals: list[Interval] = Field(default_factory=lambda: parse_intervals(DEFAULT_INTERVALS))
    c: float = 0.75
    epsilon: float = 0.01
    cache_dir: Path = Path(".satotate_cache")
    workers: int = 1
    out: Path | None = None
    format: Literal["csv", "json"] = "csv"
    compute_missing: bool = True
    use_twists: bool = False

    @field_validator("primes")
    @classmethod
    def _primes(cls, primes: list[int]) -> list[int]:
        if not primes:
            raise ValueError("no primes requested")
        bad = [p for p in primes if p < 5 or not isprime(p)]
        if bad:
            raise ValueError(f"not primes >= 5: {bad}")
        return sorted(set(primes))

    @field_validator("max_m", "workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("max_R")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must be >= 0")
        return value

    @field_validator("c")
    @classmethod
    def _exponent(cls, value: float) -> float:
        if not 0.0 <= value < 1.0:
            raise ValueError("c must lie in [0, 1)")
        return value

    @field_validator("epsilon")
    @classmethod
    def _epsilon(cls, value: float) -> float:
        if value <= 0.0:
            raise ValueError("epsilon must be positive")
        return value


# ─────────────────────────────────────────────────────────────────────────────
# LOGGING
# ─────────────────────────────────────────────────────────────────────────────

_configured = False


def configure_logging(level: str = "INFO") -> None:
    global _configured
    root = logging.getLogger()
    root.setLevel(level.upper())
    if not _configured:
        handler = RichHandler(console=Console(stderr=True), show_path=False, rich_tracebacks=True)
        handler.setFormatter(logging.Formatter("%(message)s"))
        root.addHandler(handler)
        _configured = True
