import csv
import io
import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_cloud
from rieszcap.analysis import (
    CURVE_COLUMNS,
    capacity_curve,
    closed_form_curve,
    estimate_capacity,
    left_continuity_trend,
    monotonicity_check,
    richardson,
    to_json,
)
from rieszcap.errors import InvalidInputError
from rieszcap.geometry import Ball, Interval, NodeCloud, Points, Sphere
from rieszcap.kernel import capacity_from_energy
from rieszcap.solver import SolverConfig, solve_equilibrium

TIGHT = SolverConfig(max_iters=200_000, gap_tol=1e-12)


def test_unit_ball_newtonian_capacity():
    res = estimate_capacity(Ball(3, (0.0, 0.0, 0.0), 1.0), 1.0, ladder=(500, 1000, 2000))
    assert res.scheme == "boundary"
    assert res.capacity == pytest.approx(1.0, rel=0.02)
    assert res.closed_form == pytest.approx(1.0, rel=1e-12)


def test_two_point_set_at_p_minus_two():
    res = estimate_capacity(Points([(0.0, 0.0), (1.0, 0.0)]), -2.0, ladder=(2,))
    assert res.capacity == pytest.approx(2**-0.5, rel=1e-12)


def test_capacity_vanishes_at_and_above_the_dimension():
    res = estimate_capacity(Interval(-1, 1), 1.0)
    assert res.capacity == 0.0 and res.energy.is_infinite and res.node_counts == ()


def test_interval_curve_rows():
    table = capacity_curve(Interval(-1, 1), [-1.0, 0.0, 0.5], ladder=(64, 128, 256))
    assert [r.p for r in table.rows] == [-1.0, 0.0, 0.5]
    for row in table.rows:
        assert row.capacity == pytest.approx(row.closed_form, rel=0.01)
        assert row.n >= 128 and row.iterations > 0
    assert table.rows[1].closed_form == pytest.approx(0.5, rel=1e-12)
    assert table.rows[0].closed_form == pytest.approx(1.0, rel=1e-12)
    assert monotonicity_check(table).passed


def test_disk_curve_newtonian_point():
    table = capacity_curve(Ball(2, (0.0, 0.0), 1.0), [1.0], ladder=(256, 512, 1024))
    row = table.rows[0]
    assert row.capacity == pytest.approx(row.closed_form, rel=0.02)


def test_curve_grid_must_increase():
    with pytest.raises(InvalidInputError):
        capacity_curve(Interval(-1, 1), [0.5, 0.0])
    with pytest.raises(InvalidInputError):
        closed_form_curve(2, [])


@pytest.mark.parametrize("s", [0.5, 2.0, 10.0])
@pytest.mark.parametrize("spec, p", [(Interval(-1, 1), 0.4), (Interval(-1, 1), -1.2), (Ball(2, (0.0, 0.0), 1.0), 0.0)])
def test_capacity_scales_linearly(spec, p, s):
    ladder = (64, 128, 256)
    a = estimate_capacity(spec, p, ladder, extrapolate=False, cfg=TIGHT)
    b = estimate_capacity(spec.scaled(s), p, ladder, extrapolate=False, cfg=TIGHT)
    assert b.capacity == pytest.approx(s * a.capacity, rel=1e-6)


def _extend(cloud, extra):
    n = len(extra)
    return NodeCloud(
        np.vstack([cloud.nodes, extra]),
        np.concatenate([cloud.cell_measures, np.full(n, cloud.cell_measures[0])]),
        np.concatenate([cloud.native_dims, np.full(n, cloud.native_dims[0])]),
        cloud.mesh_size,
    )


# V^(-1/p) loses all digits as p -> 0 with p != 0; p = 0 itself uses exp(-V)
exponents = st.one_of(st.just(0.0), st.floats(-2.5, -1e-3), st.floats(1e-3, 1.5))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), exponents, st.integers(1, 10))
def test_adding_nodes_never_lowers_capacity(seed, p, k):
    rng = np.random.default_rng(seed)
    small = random_cloud(rng, 15, 2, min_sep=0.02)
    big = _extend(small, rng.uniform(-1.5, 1.5, size=(k, 2)))
    if np.min(big.distances + np.eye(len(big))) <= 1e-9:
        return
    cfg = SolverConfig(max_iters=200_000, gap_tol=1e-12, diag=None if p > -1 else "exclude")
    ca = capacity_from_energy(p, solve_equilibrium(p, small, cfg).energy)
    cb = capacity_from_energy(p, solve_equilibrium(p, big, cfg).energy)
    assert cb >= ca * (1 - 1e-9)


@pytest.mark.parametrize("beta", [0.7, 1.0, 2.0])
def test_richardson_recovers_power_law(beta):
    ns = [100, 200, 400]
    value, fitted = richardson(ns, [3.0 + 5.0 * n**-beta for n in ns])
    assert fitted == pytest.approx(beta, rel=1e-8)
    assert value == pytest.approx(3.0, rel=1e-10)


def test_richardson_refuses_non_monotone_levels():
    assert richardson([100, 200, 400], [1.0, 1.1, 1.05]) == (None, None)
    assert richardson([100], [1.0]) == (None, None)
    value, beta = richardson([100, 200], [1.1, 1.05])
    assert beta == 1.0 and value == pytest.approx(1.0)


def test_non_monotone_ladder_reports_finest_level():
    res = estimate_capacity(Interval(-1, 1), 0.5, ladder=(32, 64, 128))
    if not res.extrapolated:
        assert res.capacity == res.finest_capacity and res.note


@pytest.mark.parametrize("spec", [Interval(-1, 1), Ball(2, (0.0, 0.0), 1.0)])
def test_left_continuity_deviations_shrink(spec):
    report = left_continuity_trend(spec, 0.0, n=256)
    devs = report.details["deviations"]
    assert report.passed
    assert all(b < a for a, b in zip(devs, devs[1:]))


def test_outputs_are_deterministic():
    def run():
        t = capacity_curve(Sphere(2, (0.0, 0.0), 1.0), [-0.5, 0.0, 0.5], ladder=(32, 64))
        return t.to_csv(), to_json(t)

    (csv_a, js_a), (csv_b, js_b) = run(), run()
    assert csv_a == csv_b and js_a == js_b
    rows = list(csv.reader(io.StringIO(csv_a)))
    assert tuple(rows[0]) == CURVE_COLUMNS
    assert len(rows) == 4
    doc = json.loads(js_a)
    assert doc["columns"] == list(CURVE_COLUMNS) and len(doc["rows"]) == 3


def test_closed_form_curve_matches_known_values():
    t = closed_form_curve(2, [-1.0, 0.0, 1.0, 2.0])
    assert t.capacity[1] == pytest.approx(1.0)
    assert t.capacity[-1] == 0.0
    assert math.isclose(t.capacity[0], 4 / math.pi, rel_tol=1e-12)
    assert np.all(np.diff(t.capacity) < 0)
