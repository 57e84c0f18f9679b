"""Equilibrium weights on a node cloud by away-step Frank-Wolfe.

The discrete energy is a quadratic form on the probability simplex, so each
line search is solved exactly.  The energy is minimized for p >= 0 and
maximized for p < 0.
"""

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from . import backend
from .energy import DiagonalMode, _resolve_diag, check_weights, discrete_energy, kernel_matrix
from .errors import InvalidInputError
from .kernel import EnergyValue, Regime, as_exponent

__all__ = ["SolverConfig", "EquilibriumResult", "solve_equilibrium", "optimality_gap"]

# full recomputation of the potential every this many iterations
_REFRESH = 200


@dataclass(frozen=True)
class SolverConfig:
    """Frank-Wolfe settings.

    Attributes
    ----------
    max_iters : int
    gap_tol : float
        Relative stopping tolerance: stop once gap <= gap_tol * (1 + |E|).
    diag : DiagonalMode, str or None
        ``None`` selects the exponent-dependent default.
    init : {"uniform", "cell_proportional"}
    record_history : bool
        Keep the energy after every iteration.
    """

    max_iters: int = 5000
    gap_tol: float = 1e-8
    diag: DiagonalMode | str | None = None
    init: str = "uniform"
    record_history: bool = False

    def __post_init__(self):
        if int(self.max_iters) != self.max_iters or self.max_iters < 1:
            raise InvalidInputError(f"max_iters must be a positive integer, got {self.max_iters!r}")
        if not self.gap_tol > 0:
            raise InvalidInputError(f"gap_tol must be positive, got {self.gap_tol!r}")
        if self.init not in ("uniform", "cell_proportional"):
            raise InvalidInputError(f"unknown init {self.init!r}")
        if isinstance(self.diag, str):
            object.__setattr__(self, "diag", DiagonalMode.parse(self.diag))


@dataclass(frozen=True, eq=False)
class EquilibriumResult:
    """Outcome of :func:`solve_equilibrium`.

    ``gap`` is the Frank-Wolfe duality gap of the returned weights and
    ``converged`` is ``gap <= gap_tol * (1 + |energy|)``.  ``diagnostics``
    holds the backend name, the diagonal mode, the number of starts and, for
    p <= -2, a flag that the continuum maximizer is not unique.  For p <= -2
    ``iterations`` counts both starts.
    """

    weights: np.ndarray
    energy: EnergyValue
    gap: float
    iterations: int
    converged: bool
    diag: DiagonalMode
    history: np.ndarray | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def support(self):
        return np.flatnonzero(self.weights > 0)


def _initial_weights(cloud, init):
    if init == "uniform":
        w = np.full(len(cloud), 1.0 / len(cloud))
    else:
        w = cloud.cell_measures / math.fsum(cloud.cell_measures)
    return w


def _gap_from_potential(maximize, w, u):
    e = float(w @ u)
    if maximize:
        return max(0.0, 2.0 * (float(np.max(u)) - e))
    return max(0.0, 2.0 * (e - float(np.min(u))))


def optimality_gap(p, cloud, w, diag=None):
    """Frank-Wolfe duality gap of ``w``: 2(E - min U) or 2(max U - E) when maximizing."""
    p = as_exponent(p)
    w = check_weights(cloud, w)
    u = kernel_matrix(p, cloud, diag) @ w
    return _gap_from_potential(p.maximize, w, u)


def solve_equilibrium(p, cloud, cfg=None):
    """Discrete equilibrium weights of ``cloud`` for the exponent ``p``.

    Parameters
    ----------
    p : float or RieszExponent
    cloud : NodeCloud
        At least two distinct nodes.
    cfg : SolverConfig, optional

    Returns
    -------
    EquilibriumResult
        Running out of iterations is reported through ``converged=False``.

    Raises
    ------
    InvalidInputError
        For clouds with fewer than two nodes or with coincident nodes.
    """
    p = as_exponent(p)
    cfg = cfg or SolverConfig()
    if len(cloud) < 2:
        raise InvalidInputError("the solver needs at least two nodes")
    diag = _resolve_diag(p, cfg.diag)
    if diag.kind == "exclude" and p.regime is not Regime.NEGATIVE and cfg.diag is not None:
        warnings.warn(
            "excluded diagonal with p >= 0 makes the energy form indefinite; "
            "the minimizer collapses onto few nodes",
            RuntimeWarning,
            stacklevel=2,
        )
    k = kernel_matrix(p, cloud, diag)
    w0 = _initial_weights(cloud, cfg.init)
    w, e_fw, _, iters, history = backend.frank_wolfe(
        k, w0, p.maximize, cfg.max_iters, cfg.gap_tol, _REFRESH, cfg.record_history
    )
    starts = 1
    if p.p <= -2:
        # the maximization is not concave here and symmetric starts can be
        # saddles with zero gap; also start from the node with the largest
        # row sum and keep the better stationary point
        w_alt = np.zeros(len(cloud))
        w_alt[int(np.argmax(k.sum(axis=1)))] = 1.0
        w2, e2, _, it2, hist2 = backend.frank_wolfe(
            k, w_alt, True, cfg.max_iters, cfg.gap_tol, _REFRESH, cfg.record_history
        )
        iters += it2
        starts = 2
        if e2 > e_fw:
            w, history = w2, hist2
    w = np.maximum(w, 0.0)
    w /= math.fsum(w)
    u = k @ w
    gap = _gap_from_potential(p.maximize, w, u)
    energy = discrete_energy(p, cloud, w, diag)
    e = float(energy)
    converged = bool(math.isfinite(e) and gap <= cfg.gap_tol * (1.0 + abs(e)))
    diagnostics = {"backend": backend.name(), "diag": diag.label(), "starts": starts}
    if p.p <= -2:
        diagnostics["nonunique"] = True
    return EquilibriumResult(w, energy, gap, int(iters), converged, diag, history, diagnostics)
