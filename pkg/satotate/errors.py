"""Exceptions raised by the satotate package."""


class SatoTateError(Exception):
    """Base class for every error raised on purpose by this package."""


class InvalidArgumentError(SatoTateError, ValueError):
    """An operation was called outside its domain."""


class NotPrimeError(InvalidArgumentError):
    def __init__(self, p: int):
        super().__init__(f"{p} is not a prime >= 5")
        self.p = p


class SingularCurveError(InvalidArgumentError):
    def __init__(self, a: int, b: int, p: int):
        super().__init__(f"curve y^2 = x^3 + {a}x + {b} is singular mod {p}")
        self.a, self.b, self.p = a, b, p


class DivergentGammaError(InvalidArgumentError):
    """A Gamma factor in a numerator sits on a pole, so the ratio diverges."""


class CacheError(SatoTateError):
    """A histogram cache file is unreadable or fails validation."""


class MissingDataError(SatoTateError):
    def __init__(self, primes: list[int]):
        listed = ", ".join(str(p) for p in primes)
        super().__init__(f"no cached histogram for primes: {listed}")
        self.primes = list(primes)
