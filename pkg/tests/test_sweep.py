import pytest

import satotate.sweep as sweep
from satotate.cache import cache_path, dumps_histogram, save_histogram
from satotate.errors import MissingDataError
from satotate.sweep import scan_primes


def test_computes_then_loads(tmp_path, hist):
    first = scan_primes([11, 5, 7, 5], tmp_path)
    assert [r.p for r in first] == [5, 7, 11]
    assert all(r.source == "computed" and r.error is None for r in first)
    assert all(r.histogram == hist(r.p) for r in first)

    second = scan_primes([5, 7, 11], tmp_path)
    assert all(r.source == "cache" for r in second)
    assert [r.histogram for r in second] == [r.histogram for r in first]


def test_corrupt_cache_is_recomputed(tmp_path, hist):
    save_histogram(tmp_path, hist(7))
    path = cache_path(tmp_path, 7)
    path.write_text("p 7 V 42\n0 41\n")
    (result,) = scan_primes([7], tmp_path)
    assert result.source == "computed"
    assert result.histogram == hist(7)
    assert path.read_text() == dumps_histogram(hist(7))


def test_unremovable_cache_entry_does_not_stop_the_sweep(tmp_path, hist):
    cache_path(tmp_path, 7).mkdir()
    results = scan_primes([5, 7, 11], tmp_path)
    assert [r.p for r in results] == [5, 7, 11]
    assert results[1].histogram == hist(7)
    assert results[1].error is not None
    assert results[0].error is None and results[2].error is None


def test_failed_cache_write_is_recorded_per_prime(monkeypatch, tmp_path):
    real_save = sweep.save_histogram

    def save(cache_dir, hist):
        if hist.p == 7:
            raise PermissionError("read-only")
        return real_save(cache_dir, hist)

    monkeypatch.setattr(sweep, "save_histogram", save)
    results = scan_primes([5, 7, 11], tmp_path)
    assert [r.p for r in results] == [5, 7, 11]
    assert "read-only" in results[1].error
    assert results[0].error is None and results[2].error is None
    assert not cache_path(tmp_path, 7).exists()
    assert cache_path(tmp_path, 11).exists()


def test_missing_primes_without_compute(tmp_path):
    scan_primes([5], tmp_path)
    with pytest.raises(MissingDataError) as info:
        scan_primes([5, 7, 13], tmp_path, compute_missing=False)
    assert info.value.primes == [7, 13]
    assert scan_primes([5], tmp_path, compute_missing=False)[0].source == "cache"


def test_lone_missing_prime_uses_worker_threads(monkeypatch, tmp_path, hist):
    calls = []

    def fake_histogram(p, workers=1, use_twists=False):
        calls.append((p, workers, use_twists))
        return hist(p)

    monkeypatch.setattr(sweep, "family_histogram", fake_histogram)
    scan_primes([5], tmp_path, workers=4, use_twists=True)
    assert calls == [(5, 4, True)]


@pytest.mark.parametrize("workers", [1, 4])
def test_sweep_is_independent_of_workers(tmp_path, hist, workers):
    results = scan_primes([5, 7, 11, 13, 17], tmp_path, workers=workers)
    assert [r.histogram for r in results] == [hist(p) for p in (5, 7, 11, 13, 17)]
    assert [cache_path(tmp_path, p).read_text() for p in (5, 7, 11, 13, 17)] == [
        dumps_histogram(hist(p)) for p in (5, 7, 11, 13, 17)
    ]
