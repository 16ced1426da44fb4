import csv
import io
import json
import math

import pytest
from click.testing import CliRunner

from satotate.cli import main


@pytest.fixture
def runner():
    return CliRunner()


def _rows(text: str) -> list[dict]:
    lines = text.splitlines()
    assert lines[0].startswith("# ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def test_identities(runner):
    result = runner.invoke(main, ["identities", "--max-m", "20", "--trials", "50"])
    assert result.exit_code == 0, result.output
    rows = _rows(result.stdout)
    first = next(r for r in rows if r["kind"] == "s_m" and r["m_or_R"] == "1")
    assert first["exact"] == "1/2"
    assert all(r["exact"] == "0/1" for r in rows if r["kind"] == "s_m" and r["m_or_R"] != "1")
    assert {r["kind"] for r in rows} == {"s_m", "s_m_hyper", "vandermonde", "alternating_lemma"}


def test_identities_rejects_max_m_zero(runner):
    result = runner.invoke(main, ["identities", "--max-m", "0"])
    assert result.exit_code == 2


def test_scan_writes_cache_and_is_repeatable(runner, tmp_path):
    args = ["--cache-dir", str(tmp_path), "--workers", "2", "scan", "--primes", "5..50"]
    first = runner.invoke(main, args)
    assert first.exit_code == 0, first.output
    assert len(list(tmp_path.glob("traces_p*.txt"))) == 13
    rows = _rows(first.stdout)
    assert [int(r["p"]) for r in rows] == [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert all(r["value"] == r["V_p"] for r in rows)

    second = runner.invoke(main, args)
    assert second.exit_code == 0
    assert second.stdout == first.stdout


def test_scan_is_independent_of_workers(runner, tmp_path):
    outputs = []
    for workers in ("1", "4"):
        cache = tmp_path / f"cache{workers}"
        result = runner.invoke(main, ["--cache-dir", str(cache), "--workers", workers, "scan", "--primes", "5..50"])
        assert result.exit_code == 0, result.output
        outputs.append(result.stdout)
    assert outputs[0] == outputs[1]
    first, second = (sorted((tmp_path / f"cache{w}").iterdir()) for w in ("1", "4"))
    assert [f.read_bytes() for f in first] == [f.read_bytes() for f in second]


@pytest.mark.parametrize("primes", ["4..4", "5,9"])
def test_scan_rejects_bad_primes(runner, tmp_path, primes):
    result = runner.invoke(main, ["--cache-dir", str(tmp_path), "scan", "--primes", primes])
    assert result.exit_code == 2
    assert not list(tmp_path.iterdir())


def test_no_compute_with_empty_cache(runner, tmp_path):
    result = runner.invoke(main, ["--cache-dir", str(tmp_path), "--no-compute", "moments", "--primes", "5..11"])
    assert result.exit_code == 3
    assert "5, 7, 11" in result.stderr
    assert result.stdout == ""


def test_no_compute_reads_existing_cache(runner, tmp_path):
    runner.invoke(main, ["--cache-dir", str(tmp_path), "scan", "--primes", "5..11"])
    result = runner.invoke(main, ["--cache-dir", str(tmp_path), "--no-compute", "moments", "--primes", "5..11"])
    assert result.exit_code == 0, result.output
    rows = _rows(result.stdout)
    assert [(r["p"], r["m_or_R"]) for r in rows][:4] == [("5", "0"), ("5", "1"), ("5", "2"), ("5", "3")]
    assert rows[0]["exact"] == "1/1"


def test_full_interval_has_zero_discrepancy(runner, tmp_path):
    result = runner.invoke(
        main, ["--cache-dir", str(tmp_path), "report", "--primes", "101", "--intervals", "0:1"]
    )
    assert result.exit_code == 0, result.output
    rows = [r for r in _rows(result.stdout) if r["kind"] == "discrepancy"]
    assert len(rows) == 1
    assert float(rows[0]["value"]) == pytest.approx(0.0, abs=1e-9)
    assert int(rows[0]["M"]) == 3
    uniform = [r for r in _rows(result.stdout) if r["kind"] == "discrepancy_uniform"]
    assert float(uniform[0]["value"]) == pytest.approx(0.0, abs=1e-9)


def test_report_is_independent_of_workers(runner, tmp_path):
    outputs = []
    for workers in ("1", "4"):
        cache = tmp_path / f"cache{workers}"
        result = runner.invoke(
            main, ["--cache-dir", str(cache), "--workers", workers, "report", "--primes", "5..31"]
        )
        assert result.exit_code == 0, result.output
        outputs.append(result.stdout)
    assert outputs[0] == outputs[1]


def test_report_json(runner, tmp_path):
    result = runner.invoke(
        main, ["--cache-dir", str(tmp_path), "--format", "json", "report", "--primes", "53,101", "--max-m", "6"]
    )
    assert result.exit_code == 0, result.output
    payload = json.loads(result.stdout)
    assert payload["failures"] == []
    assert payload["meta"]["primes"] == "53,101"
    kinds = {row["kind"] for row in payload["rows"]}
    assert kinds == {
        "moment", "expsum_exact", "expsum_float", "moment_identity", "discrepancy", "discrepancy_uniform", "trend",
    }
    trend = payload["rows"][-1]
    assert trend["kind"] == "trend"
    assert math.isfinite(float(trend["value"]))


def test_out_file(runner, tmp_path):
    out = tmp_path / "reports" / "expsum.csv"
    result = runner.invoke(
        main,
        ["--cache-dir", str(tmp_path / "cache"), "--out", str(out), "expsum", "--primes", "13", "--max-m", "3"],
    )
    assert result.exit_code == 0, result.output
    assert result.stdout == ""
    rows = _rows(out.read_text())
    assert [r["kind"] for r in rows][:3] == ["expsum_exact", "expsum_float", "moment_identity"]
    assert all(r["exact"] == "0/1" for r in rows if r["kind"] == "moment_identity")
