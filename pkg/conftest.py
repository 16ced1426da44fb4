from functools import lru_cache

import pytest
from sympy import primerange

from satotate.curve_family import TraceHistogram, family_histogram

PRIMES_TO_199 = list(primerange(5, 200))


@lru_cache(maxsize=None)
def histogram_for(p: int) -> TraceHistogram:
    return family_histogram(p)


@pytest.fixture(scope="session")
def hist():
    """Histogram lookup shared by the whole session: ``hist(101)``."""
    return histogram_for


@pytest.fixture(scope="session")
def all_histograms():
    return {p: histogram_for(p) for p in PRIMES_TO_199}
