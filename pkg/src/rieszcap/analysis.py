"""Capacity estimation and numerical checks of capacity as a function of p.

Everything here is a numerical witness: estimates come from discrete
equilibrium problems on a ladder of refinements, extrapolated in the node
count, and the checks compare them against closed forms where those exist.
"""

import csv
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import closedform
from .energy import DiagonalMode, cross_energy, discrete_energy
from .errors import DomainError, InvalidInputError
from .geometry import Ball, Box, Interval, Sphere, diameter, discretize, layered_ball
from .kernel import EnergyValue, as_exponent, capacity_from_energy
from .solver import SolverConfig, solve_equilibrium

__all__ = [
    "DEFAULT_LADDER",
    "CapacityResult",
    "CurveRow",
    "CurveTable",
    "CheckReport",
    "resolve_scheme",
    "discretize_for",
    "richardson",
    "closed_form_capacity",
    "estimate_capacity",
    "capacity_curve",
    "closed_form_curve",
    "jensen_ordering",
    "monotonicity_check",
    "diameter_limit_check",
    "volume_limit_closed_form",
    "volume_limit_estimate",
    "log_limit_check",
    "left_continuity_trend",
    "eqm_continuity_check",
    "pstar_hypothesis_probe",
]

DEFAULT_LADDER = (250, 500, 1000)

# smallest fitted convergence order trusted for extrapolation; flatter fits
# amplify level-to-level noise into large corrections
MIN_ORDER = 0.5
_BOUND_RTOL = 1e-6


def default_config():
    """Solver settings used by the analysis layer: a larger iteration budget."""
    return SolverConfig(max_iters=50_000)

CURVE_COLUMNS = ("p", "capacity", "energy", "gap", "iterations", "N", "closed_form")


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf"
    return repr(x)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else ("inf" if x > 0 else "-inf" if x < 0 else "nan")
    if isinstance(obj, EnergyValue):
        return _jsonable(float(obj))
    if hasattr(obj, "to_dict"):
        return _jsonable(obj.to_dict())
    return obj


def to_json(obj):
    """Deterministic JSON text (sorted keys, infinities as strings)."""
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


# -- scheme selection and oracles --------------------------------------------


def resolve_scheme(spec, p, scheme="native"):
    """Concrete discretization scheme for estimating Cap_p of ``spec``.

    ``native`` picks, for balls in R^2 and R^3, sphere nodes when
    p <= n - 2 (the equilibrium measure lives on the sphere), a volume grid
    with a sphere layer when n - 2 < p < n - 1 (density blowing up at the
    boundary), and a plain volume grid for p >= n - 1.  Intervals get
    Chebyshev-Lobatto nodes, spheres get sphere nodes, and everything else
    the geometry default.
    """
    if scheme != "native":
        return scheme
    p = float(p)
    if isinstance(spec, Sphere) or isinstance(spec, Interval):
        return "boundary"
    if isinstance(spec, Ball) and spec.dim in (2, 3):
        n = spec.dim
        if p <= n - 2:
            return "boundary"
        return "layered" if p < n - 1 else "grid"
    return "native"


def discretize_for(spec, n, scheme):
    """:func:`discretize` extended with the ``layered`` ball scheme."""
    if scheme == "layered":
        return layered_ball(spec, n)
    return discretize(spec, n, scheme)


def closed_form_capacity(spec, p):
    """Exact Cap_p for balls and intervals (any center and radius), else None."""
    p = float(p)
    if isinstance(spec, Ball):
        scale = spec.radius
        n = spec.dim
    elif isinstance(spec, Interval):
        scale = (spec.b - spec.a) / 2
        n = 1
    else:
        return None
    if p >= n:
        return 0.0
    return scale * closedform.ball_capacity(n, p)


def _lebesgue_measure(spec):
    """m_n(spec) for full-dimensional sets with a known measure, else None."""
    if isinstance(spec, (Ball, Box, Interval)):
        return float(spec.measure())
    return None


def richardson(node_counts, values):
    """Extrapolate ``c(N) ~ c_inf + a N^(-beta)`` to N -> infinity.

    With three or more levels, beta is fitted from the last three; with two,
    beta = 1.  Returns ``(value, beta)``, or ``(None, None)`` when the levels
    are not consistent with a monotone power-law approach of order at least
    0.5.
    """
    ns = [float(n) for n in node_counts]
    cs = [float(c) for c in values]
    if len(ns) < 2 or not all(math.isfinite(c) for c in cs):
        return None, None
    if len(ns) == 2:
        (n1, n2), (c1, c2) = ns, cs
        if n1 == n2 or c1 == c2:
            return None, None
        beta = 1.0
        a = (c2 - c1) / (n2**-beta - n1**-beta)
        return c2 - a * n2**-beta, beta
    (n1, n2, n3), (c1, c2, c3) = ns[-3:], cs[-3:]
    d1, d2 = c2 - c1, c3 - c2
    if d1 == 0 or d2 == 0 or (d1 > 0) != (d2 > 0) or not n1 < n2 < n3:
        return None, None
    target = d1 / d2

    def ratio(beta):
        return (n2**-beta - n1**-beta) / (n3**-beta - n2**-beta) - target

    lo, hi = MIN_ORDER, 6.0
    if ratio(lo) * ratio(hi) > 0:
        return None, None
    beta = brentq(ratio, lo, hi, xtol=1e-12)
    a = d2 / (n3**-beta - n2**-beta)
    return c3 - a * n3**-beta, beta


# -- capacity estimation -----------------------------------------------------


@dataclass(frozen=True, eq=False)
class CapacityResult:
    """Capacity estimate along a refinement ladder.

    ``capacity`` is the extrapolated value when ``extrapolated`` is true and
    the finest-level value otherwise; ``energy``, ``gap`` and ``iterations``
    belong to the finest level.
    """

    p: float
    capacity: float
    energy: EnergyValue
    node_counts: tuple
    level_capacities: tuple
    extrapolated: bool
    gap: float
    iterations: int
    converged: bool
    diag: str
    scheme: str
    closed_form: float | None = None
    beta: float | None = None
    note: str = ""
    cloud: object = field(default=None, repr=False)
    weights: np.ndarray | None = field(default=None, repr=False)

    @property
    def finest_capacity(self):
        return self.level_capacities[-1] if self.level_capacities else self.capacity

    def to_dict(self):
        return {
            "p": self.p,
            "capacity": self.capacity,
            "finest_capacity": self.finest_capacity,
            "energy": float(self.energy),
            "node_counts": list(self.node_counts),
            "level_capacities": list(self.level_capacities),
            "extrapolated": self.extrapolated,
            "richardson_order": self.beta,
            "gap": self.gap,
            "iterations": self.iterations,
            "converged": self.converged,
            "diag": self.diag,
            "scheme": self.scheme,
            "closed_form": self.closed_form,
            "note": self.note,
        }


def _ladder(ladder):
    ladder = tuple(int(n) for n in ladder)
    if not ladder or any(n < 2 for n in ladder):
        raise InvalidInputError(f"ladder needs node counts >= 2, got {ladder!r}")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise InvalidInputError(f"ladder must be strictly increasing, got {ladder!r}")
    return ladder


def _solve_level(spec, p, n, scheme, cfg):
    cloud = discretize_for(spec, n, scheme)
    res = solve_equilibrium(p, cloud, cfg)
    return cloud, res, capacity_from_energy(p, res.energy)


def estimate_capacity(spec, p, ladder=DEFAULT_LADDER, scheme="native", cfg=None, extrapolate=True):
    """Estimate Cap_p(spec) from discrete equilibrium problems.

    Parameters
    ----------
    spec : SetSpec
    p : float
    ladder : sequence of int
        Target node counts, strictly increasing.
    scheme : str
        Discretization scheme; ``native`` defers to :func:`resolve_scheme`.
    cfg : SolverConfig, optional
    extrapolate : bool
        Richardson-extrapolate across levels when the fit is monotone.

    Returns
    -------
    CapacityResult
        For p >= ambient dimension the capacity is 0 without solving.
    """
    p = float(as_exponent(p))
    cfg = cfg or default_config()
    ladder = _ladder(ladder)
    oracle = closed_form_capacity(spec, p)
    if p >= spec.dim:
        return CapacityResult(
            p, 0.0, EnergyValue.infinite(p), (), (), False, 0.0, 0, True,
            "none", "none", oracle, None, f"capacity vanishes for p >= n = {spec.dim}",
        )
    scheme = resolve_scheme(spec, p, scheme)
    counts, caps = [], []
    cloud = res = None
    for n in ladder:
        cloud, res, cap = _solve_level(spec, p, n, scheme, cfg)
        counts.append(len(cloud))
        caps.append(cap)
    value, beta = richardson(counts, caps) if extrapolate else (None, None)
    note = ""
    if extrapolate and len(counts) > 1 and value is None:
        note = "levels not monotone in N; reporting the finest level"
    extrapolated = value is not None and math.isfinite(value) and value >= 0
    return CapacityResult(
        p,
        float(value) if extrapolated else float(caps[-1]),
        res.energy,
        tuple(counts),
        tuple(float(c) for c in caps),
        extrapolated,
        res.gap,
        res.iterations,
        res.converged,
        res.diag.label(),
        scheme if scheme != "native" else spec.default_scheme,
        oracle,
        beta if extrapolated else None,
        note,
        cloud,
        res.weights,
    )


# -- curves ------------------------------------------------------------------


@dataclass(frozen=True)
class CurveRow:
    p: float
    capacity: float
    energy: float | None
    gap: float | None
    iterations: int | None
    n: int | None
    closed_form: float | None


@dataclass(frozen=True, eq=False)
class CurveTable:
    """Capacity against p, rows sorted by p.

    ``results`` keeps the underlying :class:`CapacityResult` objects (clouds
    and weights included) for numerical curves; it is empty for closed forms.
    """

    rows: tuple
    spec: dict
    scheme: str
    results: tuple = ()

    def __post_init__(self):
        ps = [r.p for r in self.rows]
        if any(b <= a for a, b in zip(ps, ps[1:])):
            raise InvalidInputError("curve rows must be strictly increasing in p")

    @property
    def p(self):
        return np.array([r.p for r in self.rows])

    @property
    def capacity(self):
        return np.array([r.capacity for r in self.rows])

    def to_csv(self):
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CURVE_COLUMNS)
        for r in self.rows:
            writer.writerow(
                [_fmt(r.p), _fmt(r.capacity), _fmt(r.energy), _fmt(r.gap), _fmt(r.iterations), _fmt(r.n), _fmt(r.closed_form)]
            )
        return buf.getvalue()

    def to_dict(self):
        return {
            "set": self.spec,
            "scheme": self.scheme,
            "columns": list(CURVE_COLUMNS),
            "rows": [
                {
                    "p": r.p,
                    "capacity": r.capacity,
                    "energy": r.energy,
                    "gap": r.gap,
                    "iterations": r.iterations,
                    "N": r.n,
                    "closed_form": r.closed_form,
                }
                for r in self.rows
            ],
        }


def _check_grid(p_grid):
    ps = [float(p) for p in p_grid]
    if not ps:
        raise InvalidInputError("empty p grid")
    if any(b <= a for a, b in zip(ps, ps[1:])):
        raise InvalidInputError("p grid must be strictly increasing")
    return ps


def capacity_curve(spec, p_grid, ladder=DEFAULT_LADDER, scheme="native", cfg=None):
    """One :func:`estimate_capacity` row per p (p_grid strictly increasing)."""
    ps = _check_grid(p_grid)
    results = tuple(estimate_capacity(spec, p, ladder, scheme, cfg) for p in ps)
    rows = tuple(
        CurveRow(r.p, r.capacity, float(r.energy), r.gap, r.iterations, r.node_counts[-1] if r.node_counts else None, r.closed_form)
        for r in results
    )
    return CurveTable(rows, spec.to_dict(), scheme, results)


def closed_form_curve(n, p_grid):
    """Closed-form unit-ball capacities in R^n (n = 1 is [-1, 1]) as a curve."""
    ps = _check_grid(p_grid)
    spec = Interval(-1.0, 1.0) if n == 1 else Ball(n, np.zeros(n), 1.0)
    rows = []
    for p in ps:
        cap = 0.0 if p >= n else closedform.ball_capacity(n, p)
        rows.append(CurveRow(p, cap, None, None, None, None, cap))
    return CurveTable(tuple(rows), spec.to_dict(), "closed-form")


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class CheckReport:
    name: str
    passed: bool
    details: dict
    notes: tuple = ()

    def to_dict(self):
        return {"check": self.name, "passed": self.passed, "details": self.details, "notes": list(self.notes)}


def _energy_power(cloud, w, p):
    """V_p^(1/p) with the diagonal excluded."""
    v = float(discrete_energy(p, cloud, w, DiagonalMode.exclude()))
    return v ** (1.0 / p)


def jensen_ordering(cloud, w, p, q, rtol=1e-12):
    """Check V_p^(1/p) <= V_q^(1/q) for 0 < p < q on fixed weights.

    The off-diagonal part of w x w has mass at most 1, so Jensen's inequality
    gives the ordering exactly; ``rtol`` only absorbs rounding.
    """
    if not 0 < p < q:
        raise DomainError(f"need 0 < p < q, got p={p}, q={q}")
    lhs, rhs = _energy_power(cloud, w, p), _energy_power(cloud, w, q)
    return lhs <= rhs * (1 + rtol), lhs, rhs


def monotonicity_check(curve, slack=0.0, strict=False):
    """Check that capacity decreases along the curve.

    Consecutive rows must satisfy cap_{i+1} <= cap_i + slack * cap_i (or
    cap_{i+1} < cap_i when ``strict``).  For numerical curves the Jensen
    ordering is also checked on each row's own cloud and weights, for every
    later positive exponent.
    """
    if len(curve.rows) < 2:
        raise InvalidInputError("monotonicity needs at least two rows")
    caps = curve.capacity
    violations = []
    for i in range(len(caps) - 1):
        a, b = caps[i], caps[i + 1]
        ok = b < a if strict else b <= a + slack * a
        if not ok:
            violations.append({"p": [curve.rows[i].p, curve.rows[i + 1].p], "capacity": [a, b]})
    jensen = []
    ps = [r.p for r in curve.rows]
    for i, res in enumerate(curve.results):
        if res.cloud is None or ps[i] <= 0 or len(res.cloud) < 2:
            continue
        for q in ps[i + 1 :]:
            ok, lhs, rhs = jensen_ordering(res.cloud, res.weights, ps[i], q)
            jensen.append({"p": ps[i], "q": q, "lhs": lhs, "rhs": rhs, "ok": ok})
    passed = not violations and all(j["ok"] for j in jensen)
    return CheckReport(
        "monotonicity",
        passed,
        {"slack": slack, "strict": strict, "violations": violations, "jensen": jensen},
    )


def diameter_limit_check(spec, p_list, ladder=DEFAULT_LADDER, scheme="native", cfg=None, equality_rtol=0.01):
    """Check 2^(1/p) <= Cap_p / diam <= 1 for p < 0, with equality in 1-D for p <= -1.

    The diameter is that of the finest cloud, which contains the extreme
    points for every scheme used here.
    """
    ps = [float(p) for p in p_list]
    if any(p >= 0 for p in ps):
        raise DomainError("diameter limit is for negative exponents")
    rows = []
    one_dim = spec.dim == 1
    for p in ps:
        res = estimate_capacity(spec, p, ladder, scheme, cfg, extrapolate=False)
        diam = diameter(res.cloud)
        ratio = res.capacity / diam
        lower = 2.0 ** (1.0 / p)
        # the solver stops at a relative gap of order 1e-8, so equality
        # cases land a few 1e-9 below the bound
        in_bounds = lower * (1 - _BOUND_RTOL) <= ratio <= 1 + _BOUND_RTOL
        equality = None
        if one_dim and p <= -1:
            equality = abs(ratio / lower - 1) <= equality_rtol
        rows.append({"p": p, "capacity": res.capacity, "diameter": diam, "ratio": ratio, "lower": lower, "in_bounds": in_bounds, "equality": equality})
    by_p = sorted(rows, key=lambda r: r["p"])
    trend = [r["ratio"] for r in by_p]
    passed = all(r["in_bounds"] and r["equality"] is not False for r in rows)
    return CheckReport(
        "diameter_limit",
        passed,
        {"rows": rows, "ratio_increases_as_p_decreases": all(b <= a + 1e-12 for a, b in zip(trend, trend[1:]))},
    )


def volume_limit_closed_form(n, p):
    """|S^(n-1)| Cap_p(B^n)^p / (n - p) from the closed form."""
    return closedform.sphere_area(n) * closedform.ball_capacity(n, p) ** p / (n - p)


def _poly_extrapolate_to_zero(x, y):
    """Value at 0 of the interpolating polynomial through (x, y)."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    total = 0.0
    for i in range(len(x)):
        others = np.delete(x, i)
        total += y[i] * float(np.prod(others / (others - x[i])))
    return total


def volume_limit_estimate(spec, p_sequence=None, ladder=DEFAULT_LADDER, scheme="native", cfg=None, rtol=None):
    """Estimate m_n(spec) from |S^(n-1)| Cap_p^p / (n-p) as p increases to n.

    Capacities come from :func:`estimate_capacity`; the values are
    extrapolated to n - p = 0 with the interpolating polynomial in (n - p).
    The default sequence stops at n - 0.2 because kernel entries span many
    orders of magnitude closer to n.
    """
    n = spec.dim
    ps = [float(p) for p in (p_sequence or (n - 0.5, n - 0.3, n - 0.2))]
    if any(b <= a for a, b in zip(ps, ps[1:])) or ps[-1] >= n:
        raise InvalidInputError("p sequence must increase strictly and stay below n")
    notes = []
    if ps[-1] > n - 0.2:
        notes.append("solver conditioning degrades as p approaches n")
    area = closedform.sphere_area(n)
    rows = []
    for p in ps:
        res = estimate_capacity(spec, p, ladder, scheme, cfg)
        rows.append({"p": p, "capacity": res.capacity, "value": area * res.capacity**p / (n - p)})
    estimate = _poly_extrapolate_to_zero([n - r["p"] for r in rows], [r["value"] for r in rows])
    truth = _lebesgue_measure(spec)
    rel = None if truth is None else abs(estimate / truth - 1)
    passed = rel is None or rtol is None or rel <= rtol
    return CheckReport(
        "volume_limit",
        passed,
        {"rows": rows, "estimate": estimate, "measure": truth, "relative_error": rel, "rtol": rtol},
        tuple(notes),
    )


def log_limit_check(spec, p_offsets=(0.01,), ladder=DEFAULT_LADDER, scheme="native", cfg=None, tol=1e-2):
    """Compare Cap_{-d}, Cap_0 and Cap_{+d}: the left limit must match Cap_0 and the right one not exceed it."""
    base = estimate_capacity(spec, 0.0, ladder, scheme, cfg)
    rows = []
    for d in (float(x) for x in p_offsets):
        if d <= 0:
            raise InvalidInputError("offsets must be positive")
        left = estimate_capacity(spec, -d, ladder, scheme, cfg)
        right = estimate_capacity(spec, d, ladder, scheme, cfg)
        rows.append(
            {
                "offset": d,
                "left": left.capacity,
                "right": right.capacity,
                "left_ok": abs(left.capacity - base.capacity) <= tol,
                "right_ok": right.capacity <= base.capacity + tol,
                "left_closed_form": left.closed_form,
                "right_closed_form": right.closed_form,
            }
        )
    passed = all(r["left_ok"] and r["right_ok"] for r in rows)
    return CheckReport(
        "log_limit",
        passed,
        {"cap0": base.capacity, "cap0_closed_form": base.closed_form, "tol": tol, "rows": rows},
    )


def _fixed_cloud(spec, q, n, scheme):
    return discretize_for(spec, n, resolve_scheme(spec, q, scheme))


def left_continuity_trend(spec, q, deltas=(0.2, 0.1, 0.05), n=None, scheme="native", cfg=None, ratio_range=(1.5, 2.5)):
    """|Cap_{q-d} - Cap_q| on one fixed cloud as d halves.

    Passes when the deviations decrease and each halving of d shrinks the
    deviation by a factor within ``ratio_range`` (about 2 for a smooth
    left-continuous curve).
    """
    ds = sorted((float(d) for d in deltas), reverse=True)
    cfg = cfg or default_config()
    cloud = _fixed_cloud(spec, q, n or DEFAULT_LADDER[-1], scheme)
    cap_q = capacity_from_energy(q, solve_equilibrium(q, cloud, cfg).energy)
    devs = [abs(capacity_from_energy(q - d, solve_equilibrium(q - d, cloud, cfg).energy) - cap_q) for d in ds]
    ratios = [a / b if b > 0 else math.inf for a, b in zip(devs, devs[1:])]
    passed = all(b < a for a, b in zip(devs, devs[1:])) and all(ratio_range[0] <= r <= ratio_range[1] for r in ratios)
    return CheckReport(
        "left_continuity",
        passed,
        {"q": q, "deltas": ds, "cap_q": cap_q, "deviations": devs, "ratios": ratios, "N": len(cloud)},
    )


def _probe_points(cloud):
    """Five fixed points well outside the cloud's bounding sphere."""
    center = 0.5 * (cloud.nodes.min(axis=0) + cloud.nodes.max(axis=0))
    radius = max(float(np.max(np.linalg.norm(cloud.nodes - center, axis=1))), 1e-12)
    d = cloud.dim
    if d == 1:
        offsets = np.array([[3.0], [-3.0], [4.5], [-4.5], [6.0]])
    else:
        eye = np.eye(d)
        offsets = 3.0 * np.array([eye[0], -eye[0], eye[1], -eye[1], np.ones(d) / math.sqrt(d)])
    return center + radius * offsets


def _proxies(cloud, w, q, probes):
    x = cloud.nodes
    first = w @ x
    second = np.einsum("i,ij,ik->jk", w, x, x)
    r = np.linalg.norm(probes[:, None, :] - x[None, :, :], axis=2)
    kern = -np.log(r) if q == 0 else r ** (-q)
    return first, second, kern @ w


def eqm_continuity_check(spec, q, deltas=(0.2, 0.1, 0.05), n=None, scheme="native", cfg=None, side="left"):
    """Weak-* proxies of mu_p -> mu_q on one cloud as p -> q.

    Compares first and second moments and potentials (kernel of exponent q)
    at five fixed probe points between the weights at q and at q -/+ d.  This
    checks necessary conditions only, not full weak-* convergence.
    """
    if side not in ("left", "right", "both"):
        raise InvalidInputError(f"side must be left, right or both, got {side!r}")
    ds = sorted((float(d) for d in deltas), reverse=True)
    cfg = cfg or default_config()
    cloud = _fixed_cloud(spec, q, n or DEFAULT_LADDER[-1], scheme)
    probes = _probe_points(cloud)
    wq = solve_equilibrium(q, cloud, cfg).weights
    ref = _proxies(cloud, wq, q, probes)
    signs = {"left": (-1,), "right": (1,), "both": (-1, 1)}[side]
    rows = []
    for d in ds:
        mom = pot = l1 = 0.0
        first_abs = 0.0
        for s in signs:
            w = solve_equilibrium(q + s * d, cloud, cfg).weights
            f, m2, u = _proxies(cloud, w, q, probes)
            mom = max(mom, float(np.max(np.abs(f - ref[0]))), float(np.max(np.abs(m2 - ref[1]))))
            pot = max(pot, float(np.max(np.abs(u - ref[2]))))
            l1 = max(l1, float(np.abs(w - wq).sum()))
            first_abs = max(first_abs, float(np.max(np.abs(f))))
        rows.append({"delta": d, "moment_dev": mom, "potential_dev": pot, "weight_l1": l1, "max_first_moment": first_abs})

    def decreasing(key):
        vals = [r[key] for r in rows]
        return all(b <= a + 1e-14 for a, b in zip(vals, vals[1:]))

    passed = decreasing("moment_dev") and decreasing("potential_dev")
    return CheckReport(
        "eqm_continuity",
        passed,
        {"q": q, "side": side, "rows": rows, "N": len(cloud),
         "moments_decrease": decreasing("moment_dev"), "potentials_decrease": decreasing("potential_dev")},
        ("moment and potential proxies are necessary conditions for weak-* convergence only",),
    )


def pstar_hypothesis_probe(spec, p, p_star, ladder=(64, 256, 1024), scheme="native", cfg=None):
    """Track the p*-energy of the p-equilibrium weights along a ladder.

    Classified ``divergent`` when it grows by more than 50% at every level,
    ``bounded`` when the last two levels agree within 10%, else
    ``inconclusive``.  This is numerical evidence, not a verification.  In
    1-D the discrete p*-energy of a bounded density grows only like
    N^(p*-1) when p* > 1, so ladders should step by a factor of 4 or more.
    """
    p, p_star = float(p), float(p_star)
    if not p_star > p:
        raise InvalidInputError(f"need p_star > p, got p={p}, p_star={p_star}")
    ladder = _ladder(ladder)
    cfg = cfg or default_config()
    sch = resolve_scheme(spec, p, scheme)
    counts, values = [], []
    for n in ladder:
        cloud = discretize_for(spec, n, sch)
        w = solve_equilibrium(p, cloud, cfg).weights
        counts.append(len(cloud))
        values.append(float(cross_energy(p_star, cloud, w)))
    growth = [b / a if a > 0 else math.inf for a, b in zip(values, values[1:])]
    if len(values) >= 2 and all(g > 1.5 for g in growth):
        verdict = "divergent"
    elif len(values) >= 2 and abs(values[-1] / values[-2] - 1) <= 0.10:
        verdict = "bounded"
    else:
        verdict = "inconclusive"
    return CheckReport(
        "pstar_probe",
        verdict != "inconclusive",
        {"p": p, "p_star": p_star, "N": counts, "cross_energy": values, "growth": growth, "classification": verdict},
        ("numerical evidence only",),
    )
