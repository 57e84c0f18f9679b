import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rieszcap.errors import InvalidInputError, UnsupportedError
from rieszcap.geometry import (
    Ball,
    Box,
    Interval,
    NodeCloud,
    Points,
    Sphere,
    Union,
    diameter,
    discretize,
    layered_ball,
    spec_from_dict,
    spec_from_json,
)

SPECS = [
    (Interval(-1.0, 1.0), "grid"),
    (Interval(-1.0, 1.0), "boundary"),
    (Ball(2, (0.0, 0.0), 1.0), "grid"),
    (Ball(2, (0.0, 0.0), 1.0), "boundary"),
    (Ball(3, (0.0, 0.0, 0.0), 1.0), "grid"),
    (Ball(3, (0.0, 0.0, 0.0), 1.0), "boundary"),
    (Sphere(3, (0.0, 0.0, 0.0), 2.0), "boundary"),
    (Box((0.0, 0.0), (1.0, 2.0)), "grid"),
    (Box((0.0, 0.0, 0.0), (1.0, 1.0, 1.0)), "grid"),
]


def test_interval_grid_is_cell_midpoints():
    cloud = discretize(Interval(-1, 1), 4, "grid")
    np.testing.assert_allclose(cloud.nodes[:, 0], [-0.75, -0.25, 0.25, 0.75], atol=1e-15)
    np.testing.assert_allclose(cloud.cell_measures, [0.5] * 4, atol=1e-15)


def test_circle_boundary_nodes_are_equally_spaced():
    cloud = discretize(Sphere(2, (0.0, 0.0), 1.0), 4, "boundary")
    assert len(cloud) == 4
    np.testing.assert_allclose(np.linalg.norm(cloud.nodes, axis=1), 1.0)
    gaps = np.linalg.norm(cloud.nodes - np.roll(cloud.nodes, 1, axis=0), axis=1)
    np.testing.assert_allclose(gaps, math.sqrt(2.0))
    np.testing.assert_allclose(cloud.cell_measures, cloud.cell_measures[0])
    assert cloud.cell_measures.sum() == pytest.approx(2 * math.pi)


@pytest.mark.parametrize("n", [2, 10, 1000])
def test_points_pass_through(n):
    cloud = discretize(Points(((0.0, 0.0), (1.0, 0.0))), n)
    np.testing.assert_array_equal(cloud.nodes, [[0.0, 0.0], [1.0, 0.0]])
    np.testing.assert_array_equal(cloud.cell_measures, [1.0, 1.0])
    assert list(cloud.native_dims) == [0, 0]


@pytest.mark.parametrize(
    "pts, expected", [([(0, 0), (3, 4)], 5.0), ([(1.0, 2.0)], 0.0), ([(0, 0), (1, 0), (0, 1), (1, 1)], math.sqrt(2))]
)
def test_diameter_examples(pts, expected):
    assert diameter(np.array(pts, dtype=float)) == pytest.approx(expected, rel=1e-15)
    assert diameter(discretize(Points(pts), 2)) == pytest.approx(expected, rel=1e-15)


def test_diameter_of_empty_set_is_rejected():
    with pytest.raises(InvalidInputError):
        diameter(np.zeros((0, 2)))


@pytest.mark.parametrize("spec, scheme", SPECS)
@pytest.mark.parametrize("n", [50, 400])
def test_node_count_within_factor_two(spec, scheme, n):
    cloud = discretize(spec, n, scheme)
    assert n / 2 <= len(cloud) <= 2 * n


@pytest.mark.parametrize("spec, scheme", SPECS)
def test_cell_measures_add_up_to_the_set_measure(spec, scheme):
    cloud = discretize(spec, 300, scheme)
    if scheme == "boundary" and not isinstance(spec, Interval):
        r = spec.radius
        total = {2: 2 * math.pi * r, 3: 4 * math.pi * r**2}[spec.dim]
    else:
        total = spec.measure()
    assert cloud.cell_measures.sum() == pytest.approx(total, rel=1e-9)


@pytest.mark.parametrize("spec, scheme", SPECS)
def test_discretize_is_deterministic(spec, scheme):
    a, b = discretize(spec, 200, scheme), discretize(spec, 200, scheme)
    assert a.nodes.tobytes() == b.nodes.tobytes()
    assert a.cell_measures.tobytes() == b.cell_measures.tobytes()


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS), st.floats(min_value=0.05, max_value=20.0), st.integers(min_value=8, max_value=300))
def test_discretize_commutes_with_scaling(spec_scheme, s, n):
    spec, scheme = spec_scheme
    a = discretize(spec.scaled(s), n, scheme)
    b = discretize(spec, n, scheme).scaled(s)
    assert len(a) == len(b)
    np.testing.assert_allclose(a.nodes, b.nodes, rtol=1e-13, atol=1e-13 * s)
    np.testing.assert_allclose(a.cell_measures, b.cell_measures, rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.tuples(st.floats(-10, 10), st.floats(-10, 10)), min_size=2, max_size=20, unique=True),
    st.floats(min_value=1e-3, max_value=1e3),
)
def test_diameter_scales_linearly(pts, s):
    pts = np.array(pts)
    assert diameter(pts * s) == pytest.approx(s * diameter(pts), rel=1e-14)


def test_ball_nodes_stay_inside_the_ball():
    for spec in (Ball(2, (1.0, -2.0), 0.5), Ball(3, (0.0, 1.0, 0.0), 2.0)):
        cloud = discretize(spec, 500, "grid")
        assert np.all(np.linalg.norm(cloud.nodes - spec.center, axis=1) <= spec.radius * (1 + 1e-12))


def test_layered_ball_mixes_volume_and_surface_nodes():
    spec = Ball(2, (0.0, 0.0), 1.0)
    cloud = layered_ball(spec, 1000)
    assert 500 <= len(cloud) <= 2000
    assert set(np.unique(cloud.native_dims)) == {1, 2}
    with pytest.raises(UnsupportedError):
        layered_ball(Box((0, 0), (1, 1)), 100)


def test_union_deduplicates_shared_nodes():
    u = Union((Interval(0.0, 1.0), Interval(0.0, 1.0)))
    cloud = discretize(u, 40, "grid")
    assert len(cloud) == 20
    d = cloud.distances + np.diag(np.full(len(cloud), np.inf))
    assert d.min() > 0


@pytest.mark.parametrize(
    "spec, scheme", [(Sphere(3, (0, 0, 0), 1.0), "grid"), (Box((0, 0), (1, 1)), "boundary")]
)
def test_unsupported_combinations_raise(spec, scheme):
    with pytest.raises(UnsupportedError):
        discretize(spec, 100, scheme)


def test_invalid_requests():
    with pytest.raises(InvalidInputError):
        discretize(Interval(0, 1), 1)
    with pytest.raises(InvalidInputError):
        discretize(Interval(0, 1), 10, "mesh")
    with pytest.raises(InvalidInputError):
        Interval(1, 0)
    with pytest.raises(InvalidInputError):
        Points([(0, 0), (0, 0)])
    with pytest.raises(InvalidInputError):
        NodeCloud(np.zeros((2, 1)), np.array([1.0, -1.0]), 1, 0.5)


@pytest.mark.parametrize(
    "doc",
    [
        {"type": "ball", "dim": 3, "center": [0, 0, 0], "radius": 1.0},
        {"type": "interval", "a": -1, "b": 1},
        {"type": "points", "coords": [[0, 0], [1, 0]]},
        {"type": "box", "lo": [0, 0], "hi": [1, 1]},
        {"type": "union", "parts": [{"type": "interval", "a": -2, "b": -1}, {"type": "interval", "a": 1, "b": 2}]},
    ],
)
def test_json_round_trip(doc):
    spec = spec_from_json(json.dumps(doc))
    again = spec_from_dict(spec.to_dict())
    assert again.to_dict() == spec.to_dict()
    assert spec.to_dict()["type"] == doc["type"]


def test_malformed_json_specs():
    with pytest.raises(InvalidInputError):
        spec_from_dict({"type": "ball", "dim": 2})
    with pytest.raises(InvalidInputError):
        spec_from_dict({"type": "torus"})
    with pytest.raises(InvalidInputError):
        spec_from_dict([1, 2])
