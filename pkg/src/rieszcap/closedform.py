"""Explicit capacities and equilibrium measures of balls and intervals.

All gamma-ratio powers are formed in log space, since (ratio)^(1/p) amplifies
rounding as p -> 0.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from .errors import DomainError, NonUniqueEquilibriumError
from .specfun import beta, digamma, log_beta, log_gamma

__all__ = [
    "BallRegime",
    "ball_regime",
    "ball_capacity",
    "interval_capacity",
    "DensityValue",
    "ball_equilibrium_density",
    "interval_equilibrium_density",
    "interval_equilibrium_cdf",
    "ball_equilibrium_radial_cdf",
    "gotz_constant",
    "sphere_area",
    "ball_volume",
]


class BallRegime(enum.Enum):
    P_LE_MINUS2 = "p_le_minus2"  # p <= -2 (p <= -1 when n = 1)
    P_ZERO = "p_zero"
    MID = "mid"  # -2 < p <= n-2, p != 0  (-1 < p < 1 when n = 1)
    HIGH = "high"  # n-2 < p < n


def _check_dim(n, least=1):
    if int(n) != n or n < least:
        raise DomainError(f"dimension must be an integer >= {least}, got {n!r}")
    return int(n)


def ball_regime(n, p):
    """Which branch of the unit-ball capacity formula applies at (n, p)."""
    n = _check_dim(n)
    p = float(p)
    if p >= n:
        raise DomainError(f"capacity formula needs p < n, got p={p}, n={n}")
    if n == 1:
        if p <= -1:
            return BallRegime.P_LE_MINUS2
        return BallRegime.P_ZERO if p == 0 else BallRegime.MID
    if p <= -2:
        return BallRegime.P_LE_MINUS2
    if p == 0:
        return BallRegime.P_ZERO
    if p <= n - 2:
        return BallRegime.MID
    return BallRegime.HIGH


def sphere_area(n):
    """Surface area |S^(n-1)| of the unit sphere in R^n."""
    n = _check_dim(n)
    return 2.0 * math.pi ** (n / 2) / math.exp(log_gamma(n / 2))


def ball_volume(n):
    """Lebesgue measure of the unit ball in R^n."""
    n = _check_dim(n)
    return sphere_area(n) / n


def interval_capacity(p):
    """Riesz p-capacity of [-1, 1], for p < 1."""
    p = float(p)
    if p >= 1:
        raise DomainError(f"interval capacity needs p < 1, got {p}")
    if p <= -1:
        return 2.0 ** (1.0 + 1.0 / p)
    if p == 0:
        return 0.5
    log_ratio = log_gamma(0.5) - log_gamma((1 - p) / 2) - log_gamma(1 + p / 2)
    return math.exp(log_ratio / p)


def ball_capacity(n, p):
    """Riesz p-capacity of the closed unit ball in R^n, for p < n.

    n = 1 is the interval [-1, 1].
    """
    n = _check_dim(n)
    p = float(p)
    if n == 1:
        return interval_capacity(p)
    regime = ball_regime(n, p)
    if regime is BallRegime.P_LE_MINUS2:
        return 2.0 ** (1.0 + 1.0 / p)
    if regime is BallRegime.P_ZERO:
        return 2.0 * math.exp((digamma((n - 1) / 2) - digamma(n - 1)) / 2)
    if regime is BallRegime.MID:
        log_ratio = (
            log_gamma(n - 1 - p / 2)
            + log_gamma((n - 1) / 2)
            - log_gamma((n - 1 - p) / 2)
            - log_gamma(n - 1)
        )
        return 2.0 * math.exp(log_ratio / p)
    log_ratio = log_gamma(n / 2) - log_gamma((n - p) / 2) - log_gamma(1 + p / 2)
    return math.exp(log_ratio / p)


@dataclass(frozen=True)
class DensityValue:
    """Equilibrium density at a point.

    ``kind`` is ``"surface"`` (density against (n-1)-dimensional surface
    measure on the unit sphere) or ``"volume"`` (against Lebesgue measure).
    """

    kind: str
    value: float


def ball_equilibrium_density(n, p, x):
    """Density of the unit-ball equilibrium measure at the point ``x``.

    Raises
    ------
    NonUniqueEquilibriumError
        For p <= -2, where the equilibrium measure is not unique.
    DomainError
        If |x| > 1, n < 2 or p >= n.
    """
    n = _check_dim(n, least=2)
    p = float(p)
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != n:
        raise DomainError(f"point must have {n} coordinates, got {x.size}")
    r = float(np.linalg.norm(x))
    if r > 1 + 1e-12:
        raise DomainError(f"point lies outside the unit ball (|x| = {r})")
    if p >= n:
        raise DomainError(f"need p < n, got p={p}, n={n}")
    if p <= -2:
        if p == -2:
            desc = "any probability measure on the unit sphere with center of mass at the origin"
        else:
            desc = "mu = (delta_{-xi} + delta_{+xi}) / 2, any unit vector xi"
        raise NonUniqueEquilibriumError(
            f"ball equilibrium is non-unique at p={p}", desc
        )
    if p <= n - 2:
        on_sphere = abs(r - 1.0) <= 1e-12
        return DensityValue("surface", 1.0 / sphere_area(n) if on_sphere else 0.0)
    if r >= 1.0:
        return DensityValue("volume", math.inf)
    b = beta(n / 2, (p - n + 2) / 2)
    value = 2.0 / sphere_area(n) / b * (1.0 - r * r) ** (-(n - p) / 2)
    return DensityValue("volume", value)


def interval_equilibrium_density(p, x):
    """Equilibrium density of [-1, 1] at x, for -1 < p < 1 and -1 < x < 1."""
    p = float(p)
    x = float(x)
    if not -1 < p < 1:
        raise DomainError(f"interval density needs -1 < p < 1, got {p}")
    if not -1 < x < 1:
        raise DomainError(f"need -1 < x < 1, got {x}")
    return math.exp(-log_beta(0.5, (1 + p) / 2)) * (1 - x * x) ** (-(1 - p) / 2)


def interval_equilibrium_cdf(p, x):
    """mu([-1, x]) for the interval equilibrium measure.

    For -1 < p < 1 the variable (1 + x)/2 is Beta((1+p)/2, (1+p)/2)
    distributed; p = 0 is the arcsine law.  For p <= -1 the measure is
    (delta_{-1} + delta_{+1})/2.
    """
    p = float(p)
    x = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
    if p >= 1:
        raise DomainError(f"need p < 1, got {p}")
    if p <= -1:
        return np.where(x >= 1.0, 1.0, 0.5)
    if p == 0:
        return 0.5 + np.arcsin(x) / math.pi
    a = (1 + p) / 2
    return _sp.betainc(a, a, (1 + x) / 2)


def ball_equilibrium_radial_cdf(n, p, r):
    """mu(|x| <= r) for the unit-ball equilibrium measure when n-2 < p < n.

    |x|^2 is Beta(n/2, (p-n+2)/2) distributed under the volume density.
    """
    n = _check_dim(n, least=2)
    p = float(p)
    if not n - 2 < p < n:
        raise DomainError(f"radial cdf is for the volume regime n-2 < p < n, got p={p}")
    r = np.clip(np.asarray(r, dtype=float), 0.0, 1.0)
    return _sp.betainc(n / 2, (p - n + 2) / 2, r * r)


def gotz_constant(p, n):
    """The normalizing constant A(p, n) of the spatial energy characterization."""
    n = _check_dim(n)
    p = float(p)
    if not p > 0:
        raise DomainError(f"A(p, n) is defined for p > 0, got {p}")
    if n == 1:
        return p * (p + 1) / 2.0 ** (p + 1)
    log_inv = (
        p * math.log(2.0)
        - math.log(p)
        + (n - 1) / 2 * math.log(math.pi)
        - log_gamma((n + 1) / 2)
        + log_beta((n + 1) / 2, (p + 1) / 2)
    )
    return math.exp(-log_inv)
