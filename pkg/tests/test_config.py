from pathlib import Path

import pytest
from pydantic import ValidationError

from satotate.config import RunConfig, load_settings, parse_intervals, parse_primes
from satotate.equidistribution import Interval
from satotate.errors import InvalidArgumentError


def test_parse_prime_range():
    primes = parse_primes("5..50")
    assert primes == [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert len(primes) == 13


def test_parse_prime_list_and_mix():
    assert parse_primes("53,101,199") == [53, 101, 199]
    assert parse_primes("199, 2..12,7") == [5, 7, 11, 199]


@pytest.mark.parametrize("text", ["4..4", "", "0..3", "5,9", "2", "x..9", "seven"])
def test_parse_primes_rejects(text):
    with pytest.raises(InvalidArgumentError):
        parse_primes(text)


def test_parse_intervals():
    assert parse_intervals("0:0.25, 0.25:0.75") == [Interval(lo=0, hi=0.25), Interval(lo=0.25, hi=0.75)]
    for bad in ["0.5:0.25", "0:2", "0.1", "a:b", ""]:
        with pytest.raises(InvalidArgumentError):
            parse_intervals(bad)


def test_run_config_defaults():
    config = RunConfig(primes=[11, 5, 11])
    assert config.primes == [5, 11]
    assert (config.max_m, config.max_R) == (8, 3)
    assert [i.label() for i in config.intervals] == ["[0,0.25)", "[0,0.5)", "[0.25,0.75)"]


@pytest.mark.parametrize(
    "overrides",
    [
        {"primes": []},
        {"primes": [5, 9]},
        {"primes": [5], "max_m": 0},
        {"primes": [5], "max_R": -1},
        {"primes": [5], "c": 1.0},
        {"primes": [5], "epsilon": 0.0},
        {"primes": [5], "workers": 0},
        {"primes": [5], "format": "xml"},
    ],
)
def test_run_config_rejects(overrides):
    with pytest.raises(ValidationError):
        RunConfig(**overrides)


def test_settings_from_environment(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("SATOTATE_CACHE_DIR", str(tmp_path / "cache"))
    monkeypatch.setenv("SATOTATE_WORKERS", "3")
    monkeypatch.setenv("SATOTATE_C", "0.5")
    settings = load_settings()
    assert settings.cache_dir == tmp_path / "cache"
    assert settings.workers == 3
    assert settings.c == 0.5


def test_settings_from_dotenv_file(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    # registers the variable so monkeypatch restores it after load_dotenv writes it
    monkeypatch.setenv("SATOTATE_EPSILON", "")
    monkeypatch.delenv("SATOTATE_EPSILON")
    (tmp_path / ".env").write_text("SATOTATE_EPSILON=0.05\n")
    assert load_settings().epsilon == 0.05
    assert load_settings().cache_dir == Path(".satotate_cache")
