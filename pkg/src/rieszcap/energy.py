"""Discrete Riesz energies of weighted node clouds.

The energy of weights ``w`` on a cloud is the quadratic form ``w^T K w`` with
``K_ij = k_p(|x_i - x_j|)`` off the diagonal.  The diagonal is either dropped
(``exclude``) or replaced by a per-cell self-interaction ``k_p(sigma * h_i)``
(``self_cell``), where ``h_i`` is the radius of a ball with the cell's measure.

Excluding the diagonal suits p <= -1, where equilibrium measures may be
atomic.  For p >= 0 it leaves an indefinite form whose minimum sits at a
single node, and for -1 < p < 0 it biases the energy by O(1/N); the default
there is ``self_cell`` with a lattice-calibrated sigma (:func:`lattice_sigma`).
"""

import functools
import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy import special as _sp

from . import backend
from .closedform import gotz_constant
from .errors import InvalidInputError, UnsupportedError
from .kernel import EnergyValue, Regime, as_exponent
from .specfun import EULER_GAMMA, log_gamma

__all__ = [
    "DiagonalMode",
    "default_diag",
    "lattice_sigma",
    "diagonal_values",
    "kernel_matrix",
    "check_weights",
    "discrete_energy",
    "potential",
    "RadialQuadrature",
    "SpatialQuadrature",
    "gotz_radial_energy",
    "gotz_spatial_energy",
    "cross_energy",
]

FALLBACK_SIGMA = 0.6
WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True)
class DiagonalMode:
    """How the i = j terms of the energy are treated.

    Parameters
    ----------
    kind : {"exclude", "self_cell"}
    sigma : float or None
        Self-cell scale in (0, 1].  ``None`` selects :func:`lattice_sigma`
        where it is defined and 0.6 elsewhere.
    """

    kind: str = "exclude"
    sigma: float | None = None

    def __post_init__(self):
        if self.kind not in ("exclude", "self_cell"):
            raise InvalidInputError(f"unknown diagonal mode {self.kind!r}")
        if self.kind == "exclude" and self.sigma is not None:
            raise InvalidInputError("exclude mode takes no sigma")
        if self.sigma is not None:
            s = float(self.sigma)
            if not 0.0 < s <= 1.0:
                raise InvalidInputError(f"sigma must lie in (0, 1], got {self.sigma!r}")
            object.__setattr__(self, "sigma", s)

    @classmethod
    def exclude(cls):
        return cls("exclude")

    @classmethod
    def self_cell(cls, sigma=None):
        return cls("self_cell", sigma)

    @classmethod
    def parse(cls, text):
        """Parse ``exclude``, ``self-cell`` or ``self-cell:<sigma>``."""
        text = text.strip().lower().replace("_", "-")
        if text == "exclude":
            return cls.exclude()
        if text == "self-cell":
            return cls.self_cell()
        if text.startswith("self-cell:"):
            try:
                sigma = float(text.split(":", 1)[1])
            except ValueError:
                raise InvalidInputError(f"bad sigma in {text!r}") from None
            return cls.self_cell(sigma)
        raise InvalidInputError(f"diagonal mode must be exclude or self-cell[:sigma], got {text!r}")

    def label(self):
        if self.kind == "exclude":
            return "exclude"
        return "self-cell" if self.sigma is None else f"self-cell:{self.sigma:g}"


def default_diag(p):
    """``exclude`` for p <= -1, lattice-calibrated ``self_cell`` for p > -1.

    For p <= -1 equilibrium measures may be atomic and an atom has no
    self-energy; above -1 they are diffuse and dropping the self-term biases
    the energy by O(1/N), which p -> 0 amplifies in the capacity.
    """
    if float(as_exponent(p)) <= -1.0:
        return DiagonalMode.exclude()
    return DiagonalMode.self_cell()


def _resolve_diag(p, diag):
    if diag is None:
        return default_diag(p)
    if isinstance(diag, str):
        return DiagonalMode.parse(diag)
    return diag


# -- lattice calibration of the self-cell scale ------------------------------

_EWALD_RADIUS = 4
_SIGMA_ZERO_BAND = 1e-12


def _lattice_vectors(d):
    rng = range(-_EWALD_RADIUS, _EWALD_RADIUS + 1)
    pts = np.array([j for j in itertools.product(rng, repeat=d) if any(j)], dtype=float)
    return math.pi * np.einsum("ij,ij->i", pts, pts)


def _upper_gamma(a, x):
    """Gamma(a, x) for x > 0; a < 0 by the downward recurrence."""
    if a > 0:
        return _sp.gammaincc(a, x) * math.exp(log_gamma(a))
    return (_upper_gamma(a + 1, x) - x**a * np.exp(-x)) / a


def _epstein_zeta(p, d):
    """Analytic continuation of sum over nonzero j in Z^d of |j|^(-p), -2 < p < d, p != 0."""
    s = p / 2
    x = _lattice_vectors(d)
    terms = _upper_gamma(s, x) * x ** (-s) + _upper_gamma(d / 2 - s, x) * x ** (s - d / 2)
    total = -1.0 / s + 1.0 / (s - d / 2) + math.fsum(terms)
    return total * math.pi**s * _sp.rgamma(s)


def _epstein_zeta_slope_at_zero(d):
    """d/dp of the continued lattice sum at p = 0."""
    x = _lattice_vectors(d)
    terms = _sp.exp1(x) + _upper_gamma(d / 2, x) * x ** (-d / 2)
    g0 = -2.0 / d + math.fsum(terms)
    return 0.5 * (g0 - math.log(math.pi) - EULER_GAMMA)


@functools.lru_cache(maxsize=512)
def lattice_sigma(p, d):
    """Self-cell scale that makes the cubic lattice energy match the continuum.

    On the lattice a Z^d with cells of measure a^d, the continued lattice sum
    gives the missing self-interaction per node.  Matching ``k_p(sigma * h)``
    to it, with ``h = (a^d / omega_d)^(1/d)``, fixes ``sigma``.  Defined for
    -2 < p < d; returns 0.6 elsewhere (and for d = 0).

    >>> round(lattice_sigma(0.0, 1), 12) == round(1 / math.pi, 12)
    True
    """
    p = float(p)
    d = int(d)
    if d < 1 or not -2.0 < p < d:
        return FALLBACK_SIGMA
    omega = math.pi ** (d / 2) / math.exp(log_gamma(d / 2 + 1))
    if abs(p) < _SIGMA_ZERO_BAND:
        # sigma is smooth through p = 0 and the gamma factors overflow for tiny p
        p = 0.0
    if p == 0.0:
        return float(omega ** (1.0 / d) * math.exp(_epstein_zeta_slope_at_zero(d)))
    z = _epstein_zeta(p, d)
    if not z < 0:
        return FALLBACK_SIGMA
    return float(min(1.0, omega ** (1.0 / d) * (-z) ** (-1.0 / p)))


# -- kernel assembly ---------------------------------------------------------


def diagonal_values(p, cloud, diag=None):
    """Diagonal of the kernel matrix under ``diag``.

    Nodes of native dimension 0 (isolated points) have no cell and are always
    treated as excluded.
    """
    p = float(as_exponent(p))
    diag = _resolve_diag(p, diag)
    out = np.zeros(len(cloud))
    if diag.kind == "exclude":
        return out
    radii = cloud.cell_radii
    for d in np.unique(cloud.native_dims):
        if d == 0:
            continue
        sel = cloud.native_dims == d
        sigma = diag.sigma if diag.sigma is not None else lattice_sigma(p, int(d))
        r = sigma * radii[sel]
        out[sel] = -np.log(r) if p == 0.0 else r ** (-p)
    return out


def kernel_matrix(p, cloud, diag=None):
    """Dense kernel matrix of ``cloud`` (from its cached distance matrix)."""
    p = float(as_exponent(p))
    try:
        return backend.kernel_matrix(cloud.distances, p, diagonal_values(p, cloud, diag))
    except ValueError as exc:
        raise InvalidInputError(str(exc)) from None


def check_weights(cloud, w):
    """Validate a probability vector aligned with ``cloud``; return it as an array."""
    w = np.asarray(w, dtype=float).reshape(-1)
    if w.size != len(cloud):
        raise InvalidInputError(f"weights have length {w.size}, cloud has {len(cloud)} nodes")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise InvalidInputError("weights must be finite and nonnegative")
    total = math.fsum(w)
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise InvalidInputError(f"weights must sum to 1, got {total!r}")
    return w


def _point_mass_excluded(p, cloud, w, dvals):
    """A single atom with no self-term has infinite energy when p >= 0."""
    if as_exponent(p).regime is Regime.NEGATIVE:
        return False
    support = np.flatnonzero(w)
    return support.size == 1 and dvals[support[0]] == 0.0


def discrete_energy(p, cloud, w, diag=None):
    """Quadratic energy ``w^T K w`` of the weights.

    Parameters
    ----------
    p : float or RieszExponent
    cloud : NodeCloud
    w : array_like
        Probability vector aligned with the nodes.
    diag : DiagonalMode, str or None
        Diagonal treatment; ``None`` means :func:`default_diag`.

    Returns
    -------
    EnergyValue
        Infinite only for a single excluded atom with p >= 0.
    """
    p = as_exponent(p)
    w = check_weights(cloud, w)
    diag = _resolve_diag(p, diag)
    dvals = diagonal_values(p, cloud, diag)
    if _point_mass_excluded(p, cloud, w, dvals):
        return EnergyValue.infinite(p)
    k = kernel_matrix(p, cloud, diag)
    return EnergyValue.finite(p, float(w @ (k @ w)))


def potential(p, cloud, w, diag=None):
    """U_i = sum_j K_ij w_j, so that ``w @ U`` is the discrete energy."""
    w = check_weights(cloud, w)
    return kernel_matrix(p, cloud, diag) @ w


# -- Gotz characterizations --------------------------------------------------


@dataclass(frozen=True)
class RadialQuadrature:
    """Geometric r-grid on [lo * d_min, hi * d_max] with ``points`` nodes."""

    points: int = 400
    lo: float = 0.01
    hi: float = 100.0


@dataclass(frozen=True)
class SpatialQuadrature:
    """Geometric r-grid on [lo * d_min, hi * d_max] with ``points`` nodes."""

    points: int = 800
    lo: float = 0.01
    hi: float = 100.0


def _positive_only(p, what):
    p = as_exponent(p)
    if p.regime is not Regime.POSITIVE:
        raise UnsupportedError(f"{what} is defined for p > 0, got p={p.p}")
    return p


def _pair_distances(cloud):
    n = len(cloud)
    iu, ju = np.triu_indices(n, k=1)
    dist = cloud.distances[iu, ju]
    if np.any(dist <= 0):
        raise InvalidInputError("duplicate nodes: zero pair distance")
    return iu, ju, dist


def _log_grid(cloud, dist, quad):
    if quad.points < 2 or not 0 < quad.lo < 1 < quad.hi:
        raise InvalidInputError(f"bad quadrature spec {quad!r}")
    lo = math.log(quad.lo * float(np.min(dist)))
    hi = math.log(quad.hi * float(np.max(dist)))
    return np.linspace(lo, hi, quad.points)


def _trapezoid(y, t):
    return float(np.sum((y[1:] + y[:-1]) * np.diff(t)) / 2)


def _pair_grid(grid, start):
    """Grid nodes above ``log start`` with the breakpoint itself prepended."""
    t0 = math.log(start)
    return np.concatenate(([t0], grid[grid > t0]))


def gotz_radial_energy(p, cloud, w, r_quadrature=None):
    """Energy from the radial ball-mass characterization, p > 0.

    ``p * sum_i w_i int_0^inf mu_i(r) r^(-p-1) dr`` with ``mu_i(r)`` the mass
    of the other nodes strictly within distance r of node i.

    Parameters
    ----------
    r_quadrature : RadialQuadrature or None
        ``None`` integrates each pair in closed form (identical to the
        excluded-diagonal energy).  Otherwise each pair is integrated in log r
        by the trapezoid rule on the grid, with the pair distance inserted as a
        breakpoint and the tail past the grid added exactly.
    """
    p = _positive_only(p, "the radial characterization")
    w = check_weights(cloud, w)
    if len(cloud) < 2:
        return EnergyValue.infinite(p, source="gotz-radial")
    pv = p.p
    iu, ju, dist = _pair_distances(cloud)
    mass = 2.0 * w[iu] * w[ju]
    if r_quadrature is None:
        per_pair = pv * (dist ** (-pv) / pv)
    else:
        grid = _log_grid(cloud, dist, r_quadrature)
        per_pair = np.empty(dist.size)
        for k, d in enumerate(dist):
            t = _pair_grid(grid, d)
            body = _trapezoid(np.exp(-pv * t), t)
            tail = math.exp(-pv * t[-1]) / pv
            per_pair[k] = pv * (body + tail)
    if _point_mass_excluded(p, cloud, w, np.zeros(len(cloud))):
        return EnergyValue.infinite(p, source="gotz-radial")
    return EnergyValue.finite(p, math.fsum(mass * per_pair), source="gotz-radial")


def _lens(n, d, r):
    """Measure of the intersection of two radius-r balls whose centers are d apart."""
    if n == 1:
        return np.maximum(0.0, 2 * r - d)
    if n == 2:
        u = np.clip(d / (2 * r), 0.0, 1.0)
        return 2 * r * r * np.arccos(u) - (d / 2) * np.sqrt(np.maximum(4 * r * r - d * d, 0.0))
    return np.where(2 * r > d, math.pi / 12 * (4 * r + d) * (2 * r - d) ** 2, 0.0)


def _lens_tail(n, p, d, big_r):
    """int_R^inf lens_n(d, r) r^(-n-p-1) dr from the large-r expansion of the lens."""
    if n == 1:
        coeffs = {1: 2.0, 0: -d}
    elif n == 2:
        coeffs = {2: math.pi, 1: -2 * d, -1: d**3 / 12, -3: d**5 / 320}
    else:
        coeffs = {3: 4 * math.pi / 3, 2: -math.pi * d, 0: math.pi * d**3 / 12}
    return sum(c * big_r ** (k - n - p) / (n + p - k) for k, c in coeffs.items())


def gotz_spatial_energy(p, cloud, w, quadrature=None):
    """Energy from the squared ball-mass characterization, p > 0, ambient n <= 3.

    ``A(p, n) * sum_{i != j} w_i w_j int lens_n(d_ij, r) r^(-n-p-1) dr``,
    integrated in log r by the trapezoid rule from the breakpoint r = d_ij/2,
    with the tail beyond the grid added from the lens expansion.
    """
    p = _positive_only(p, "the spatial characterization")
    n = cloud.dim
    if n > 3:
        raise UnsupportedError(f"lens volumes are implemented for n <= 3, got n={n}")
    quad = quadrature or SpatialQuadrature()
    w = check_weights(cloud, w)
    if len(cloud) < 2 or _point_mass_excluded(p, cloud, w, np.zeros(len(cloud))):
        return EnergyValue.infinite(p, source="gotz-spatial")
    pv = p.p
    iu, ju, dist = _pair_distances(cloud)
    grid = _log_grid(cloud, dist, quad)
    per_pair = np.empty(dist.size)
    for k, d in enumerate(dist):
        t = _pair_grid(grid, d / 2)
        r = np.exp(t)
        body = _trapezoid(_lens(n, d, r) * r ** (-n - pv), t)
        per_pair[k] = body + _lens_tail(n, pv, d, r[-1])
    total = gotz_constant(pv, n) * math.fsum(2.0 * w[iu] * w[ju] * per_pair)
    return EnergyValue.finite(p, total, source="gotz-spatial")


def cross_energy(p_star, cloud, w):
    """Excluded-diagonal p*-energy of weights (typically solved at another p)."""
    return discrete_energy(p_star, cloud, w, DiagonalMode.exclude())
