"""Acceptance criteria, one test per criterion.

Each test prints a single PASS/FAIL line; the lines are repeated in the
pytest terminal summary.
"""

import math

import numpy as np

from conftest import random_cloud
from rieszcap import closedform as cf
from rieszcap.analysis import (
    capacity_curve,
    closed_form_curve,
    diameter_limit_check,
    eqm_continuity_check,
    estimate_capacity,
    jensen_ordering,
    left_continuity_trend,
    log_limit_check,
    monotonicity_check,
    pstar_hypothesis_probe,
    volume_limit_closed_form,
    volume_limit_estimate,
)
from rieszcap.energy import DiagonalMode, discrete_energy, gotz_radial_energy, gotz_spatial_energy
from rieszcap.geometry import Ball, Box, Interval, Points, discretize
from rieszcap.solver import SolverConfig, solve_equilibrium

UNIT_DISK = Ball(2, (0.0, 0.0), 1.0)
UNIT_BALL3 = Ball(3, (0.0, 0.0, 0.0), 1.0)
INTERVAL = Interval(-1.0, 1.0)
SOLVE = SolverConfig(max_iters=50_000)


def _rel(a, b):
    return abs(a - b) / abs(b)


def test_criterion_01_closed_form_exactness(verdict):
    cases = [
        ("ball(3,1)=1", cf.ball_capacity(3, 1), 1.0),
        ("ball(2,1)=2/pi", cf.ball_capacity(2, 1), 2 / math.pi),
        ("ball(3,0)=2/sqrt(e)", cf.ball_capacity(3, 0), 2 / math.sqrt(math.e)),
        ("ball(4,0)=e^(1/4)", cf.ball_capacity(4, 0), math.e ** 0.25),
        ("interval(0)=1/2", cf.interval_capacity(0), 0.5),
        ("interval(-1)=1", cf.interval_capacity(-1), 1.0),
    ]
    cases += [(f"ball({n},-2)=sqrt2", cf.ball_capacity(n, -2), math.sqrt(2)) for n in (2, 3, 4)]
    verdict(1, "closed-form exactness to 1e-12", [(name, _rel(got, want) <= 1e-12) for name, got, want in cases])


def test_criterion_02_gotz_identity(verdict):
    checks = []
    for n in (1, 2, 3, 4):
        lhs = cf.gotz_constant(n, n) * cf.ball_volume(n) ** 2
        checks.append((f"n={n}", _rel(lhs, cf.sphere_area(n)) <= 1e-12))
    verdict(2, "A(n,n) m_n^2 = |S^(n-1)| for n=1..4", checks)


def test_criterion_03_gotz_equivalence(verdict, rng):
    checks = []
    ps = (0.5, 1.0, 1.5)
    for k in range(25):
        p = ps[k % 3]
        cloud = random_cloud(rng, int(rng.integers(5, 40)), int(rng.integers(1, 4)))
        w = rng.dirichlet(np.ones(len(cloud)))
        ref = float(discrete_energy(p, cloud, w, DiagonalMode.exclude()))
        got = float(gotz_radial_energy(p, cloud, w))
        checks.append((f"radial cloud {k}", _rel(got, ref) <= 1e-12))
    for n in (1, 2, 3):
        for p in ps:
            cloud = random_cloud(rng, 10, n)
            w = rng.dirichlet(np.ones(10))
            ref = float(discrete_energy(p, cloud, w, DiagonalMode.exclude()))
            got = float(gotz_spatial_energy(p, cloud, w))
            checks.append((f"spatial n={n} p={p}", _rel(got, ref) <= 1e-3))
    verdict(3, "Gotz radial (1e-12) and spatial (1e-3) forms match the discrete energy", checks)


def test_criterion_04_solver_vs_oracle(verdict):
    checks = []
    sphere = estimate_capacity(UNIT_BALL3, 1.0, (2000,), scheme="boundary", extrapolate=False)
    checks.append(("ball n=3 p=1 N=2000", abs(sphere.capacity - 1.0) <= 0.02))
    for p in (0.5, 1.0):
        res = estimate_capacity(UNIT_DISK, p, (1024,), extrapolate=False)
        checks.append((f"disk p={p} N~1024", _rel(res.capacity, cf.ball_capacity(2, p)) <= 0.01))
    for p in (-3.0, -2.0, -1.0, -0.5, 0.0, 0.5):
        res = estimate_capacity(INTERVAL, p, (256,), extrapolate=False)
        checks.append((f"interval p={p} N=256", _rel(res.capacity, cf.interval_capacity(p)) <= 0.01))
    verdict(4, "numerical capacities agree with closed forms", checks)


def _arcsine_cell_masses(x):
    edges = np.concatenate([[-1.0], 0.5 * (x[1:] + x[:-1]), [1.0]])
    cdf = np.array([cf.interval_equilibrium_cdf(0.0, e) for e in edges])
    return np.diff(cdf)


def test_criterion_05_equilibrium_fidelity(verdict):
    cloud = discretize(INTERVAL, 256, "grid")
    x = cloud.nodes[:, 0]
    w = solve_equilibrium(0.0, cloud, SOLVE).weights
    l1 = float(np.abs(w - _arcsine_cell_masses(x)).sum())
    w_neg = solve_equilibrium(-1.5, cloud, SOLVE).weights
    order = np.argsort(x)
    checks = [
        (f"p=0 L1={l1:.4f} <= 0.05", l1 <= 0.05),
        ("p=-1.5 left end >= 0.49", w_neg[order[0]] >= 0.49),
        ("p=-1.5 right end >= 0.49", w_neg[order[-1]] >= 0.49),
    ]
    verdict(5, "interval equilibrium weights match the closed-form measures", checks)


def test_criterion_06_diameter_bounds(verdict):
    ps = (-1.0, -2.0, -5.0, -10.0)
    two = diameter_limit_check(Points(((0.0, 0.0), (1.0, 0.0))), ps, ladder=(2,))
    seg = diameter_limit_check(INTERVAL, ps, ladder=(256,))
    checks = [(f"two-point p={r['p']}", r["in_bounds"]) for r in two.details["rows"]]
    checks += [(f"interval p={r['p']}", r["in_bounds"] and r["equality"]) for r in seg.details["rows"]]
    verdict(6, "2^(1/p) <= cap/diam <= 1, with equality on the interval", checks)


def test_criterion_07_volume_limit(verdict):
    closed = volume_limit_closed_form(2, 1.99)
    disk = volume_limit_estimate(UNIT_DISK, (1.5, 1.7, 1.8), (256, 512, 1024), rtol=0.10)
    square = volume_limit_estimate(Box((0.0, 0.0), (1.0, 1.0)), (1.5, 1.7, 1.8), (256, 512, 1024), rtol=0.15)
    checks = [
        ("closed form p=1.99 within 1% of pi", _rel(closed, math.pi) <= 0.01),
        (f"disk extrapolated {disk.details['estimate']:.4f} within 10% of pi", disk.passed),
        (f"square extrapolated {square.details['estimate']:.4f} within 15% of 1", square.passed),
    ]
    verdict(7, "capacity-to-volume limit", checks)


def test_criterion_08_monotonicity(verdict, rng):
    checks = []
    for n in (1, 2, 3, 4):
        grid = np.linspace(-6.0, n - 1e-3, 202)[1:-1]
        rep = monotonicity_check(closed_form_curve(n, grid), strict=True)
        checks.append((f"closed form n={n}", rep.passed))
    seg = capacity_curve(INTERVAL, (-3.0, -2.0, -1.0, -0.5, 0.0, 0.5), ladder=(256,))
    checks.append(("numerical interval curve", monotonicity_check(seg, slack=0.02).passed))
    disk = capacity_curve(UNIT_DISK, (-4.0, -2.0, -1.0, 0.5, 1.0, 1.5), ladder=(256,))
    checks.append(("numerical disk curve", monotonicity_check(disk, slack=0.02).passed))
    jensen_ok = 0
    for _ in range(100):
        cloud = random_cloud(rng, int(rng.integers(2, 30)), int(rng.integers(1, 4)), scale=float(rng.uniform(0.1, 10)))
        w = rng.dirichlet(np.ones(len(cloud)))
        p, q = np.sort(rng.uniform(0.05, 3.0, size=2))
        ok, _, _ = jensen_ordering(cloud, w, float(p), float(q))
        jensen_ok += bool(ok)
    checks.append((f"Jensen ordering {jensen_ok}/100", jensen_ok == 100))
    verdict(8, "capacity decreases in p", checks)


def test_criterion_09_continuity(verdict):
    log_rep = log_limit_check(UNIT_DISK, (0.01,), ladder=(1024,), tol=1e-2)
    disk_trend = left_continuity_trend(UNIT_DISK, 0.0)
    seg_trend = left_continuity_trend(INTERVAL, 0.0)
    eqm_seg = eqm_continuity_check(INTERVAL, 0.0)
    eqm_disk = eqm_continuity_check(UNIT_DISK, -1.0)
    checks = [
        ("disk Cap at +-0.01 within 1e-2 of Cap_0", log_rep.passed),
        ("disk left deviations halve", disk_trend.passed),
        ("interval left deviations halve", seg_trend.passed),
        ("interval q=0 moments decrease", eqm_seg.details["moments_decrease"]),
        ("disk q=-1 moments decrease", eqm_disk.details["moments_decrease"]),
    ]
    verdict(9, "continuity of capacity and equilibrium measures in p", checks)


def test_criterion_10_pstar_probe(verdict):
    cases = [
        ("ball n=3 p=1 p*=1.5", pstar_hypothesis_probe(UNIT_BALL3, 1.0, 1.5, ladder=(250, 1000, 4000)), "bounded"),
        ("interval p=0 p*=0.5", pstar_hypothesis_probe(INTERVAL, 0.0, 0.5), "bounded"),
        ("interval p=0 p*=1.2", pstar_hypothesis_probe(INTERVAL, 0.0, 1.2), "divergent"),
    ]
    checks = [(f"{name} -> {want}", rep.details["classification"] == want) for name, rep, want in cases]
    verdict(10, "p* hypothesis probe classifications", checks)
