"""Real gamma-family special functions: log-gamma, digamma and beta.

Log-gamma is evaluated with a Taylor series about x = 2 on [1.5, 2.5], reached
by the recurrence Gamma(x+1) = x Gamma(x) from below 10, and with Stirling's
series from 10 upward.  Working about x = 2 keeps the relative error small near
the two zeros of log Gamma at x = 1 and x = 2, where a Lanczos sum would only
deliver absolute accuracy.
"""

import math
from fractions import Fraction

from .errors import DomainError

__all__ = ["log_gamma", "digamma", "beta", "log_beta", "EULER_GAMMA"]

EULER_GAMMA = 0.57721566490153286060651209008240243

# B_2, B_4, ..., B_20
_BERNOULLI_EVEN = [
    Fraction(1, 6),
    Fraction(-1, 30),
    Fraction(1, 42),
    Fraction(-1, 30),
    Fraction(5, 66),
    Fraction(-691, 2730),
    Fraction(7, 6),
    Fraction(-3617, 510),
    Fraction(43867, 798),
    Fraction(-174611, 330),
]

_STIRLING_MIN = 10.0
_DIGAMMA_MIN = 8.0
_SERIES_TERMS = 40


def _zeta_minus_one(k, cutoff=16, corrections=6):
    """zeta(k) - 1 for integer k >= 2 by Euler-Maclaurin summation."""
    head = math.fsum(n ** -float(k) for n in range(2, cutoff))
    m = float(cutoff)
    tail = m ** (1 - k) / (k - 1) + 0.5 * m ** -k
    rising = float(k)  # k (k+1) ... (k+2j-2)
    for j in range(1, corrections + 1):
        b = float(_BERNOULLI_EVEN[j - 1])
        tail += b / math.factorial(2 * j) * rising * m ** (-k - 2 * j + 1)
        rising *= (k + 2 * j - 1) * (k + 2 * j)
    return head + tail


# log Gamma(2 + t) = (1 - gamma) t + sum_{k>=2} (-1)^k (zeta(k) - 1) t^k / k
_LG2_COEFFS = [0.0, 1.0 - EULER_GAMMA] + [
    (-1) ** k * _zeta_minus_one(k) / k for k in range(2, _SERIES_TERMS + 1)
]

_STIRLING_COEFFS = [
    float(b) / ((2 * j) * (2 * j - 1)) for j, b in enumerate(_BERNOULLI_EVEN[:8], start=1)
]
_DIGAMMA_COEFFS = [float(b) / (2 * j) for j, b in enumerate(_BERNOULLI_EVEN, start=1)]

_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)


def _check_positive(x, name="x"):
    x = float(x)
    if not x > 0.0 or math.isinf(x):
        raise DomainError(f"{name} must be a finite positive real, got {x!r}")
    return x


def _lg_series(t):
    """log Gamma(2 + t) for |t| <= 1/2."""
    acc = 0.0
    for c in reversed(_LG2_COEFFS):
        acc = acc * t + c
    return acc


def _lg_one_plus(z):
    """log Gamma(1 + z) for |z| <= 1/2, with z passed exactly."""
    return _lg_series(z) - math.log1p(z)


def _lg_stirling(x):
    inv = 1.0 / x
    inv2 = inv * inv
    acc = 0.0
    for c in reversed(_STIRLING_COEFFS):
        acc = acc * inv2 + c
    return (x - 0.5) * math.log(x) - x + _HALF_LOG_2PI + acc * inv


def log_gamma(x):
    """Natural logarithm of Gamma(x) for real x > 0.

    Raises
    ------
    DomainError
        If ``x`` is not a finite positive number.
    """
    x = _check_positive(x)
    if x >= _STIRLING_MIN:
        return _lg_stirling(x)
    if x < 0.5:
        return _lg_one_plus(x) - math.log(x)
    if x < 1.5:
        return _lg_one_plus(x - 1.0)
    if x <= 2.5:
        return _lg_series(x - 2.0)
    terms = []
    while x > 2.5:
        x -= 1.0
        terms.append(math.log(x))
    return _lg_series(x - 2.0) + math.fsum(terms)


def digamma(x):
    """Digamma function psi(x) = d/dx log Gamma(x) for real x > 0.

    Upward recurrence psi(x) = psi(x+1) - 1/x until x >= 8, then the
    asymptotic Bernoulli series.
    """
    x = _check_positive(x)
    shift = []
    while x < _DIGAMMA_MIN:
        shift.append(1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    acc = 0.0
    for c in reversed(_DIGAMMA_COEFFS):
        acc = acc * inv2 + c
    return math.log(x) - 0.5 / x - acc * inv2 - math.fsum(shift)


def log_beta(a, b):
    a = _check_positive(a, "a")
    b = _check_positive(b, "b")
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a, b):
    """Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)."""
    return math.exp(log_beta(a, b))
