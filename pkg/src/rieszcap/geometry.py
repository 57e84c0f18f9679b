"""Compact-set descriptions and their discretization into weighted node clouds.

A :class:`SetSpec` is declarative (ball, sphere, interval, box, points, union).
:func:`discretize` turns it into a :class:`NodeCloud`: nodes with positive cell
measures in the set's native dimension (3 for a solid ball in R^3, 2 for the
sphere S^2, 0 for isolated points).
"""

import itertools
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import backend
from .errors import InvalidInputError, UnsupportedError

__all__ = [
    "SetSpec",
    "Ball",
    "Sphere",
    "Interval",
    "Box",
    "Points",
    "Union",
    "NodeCloud",
    "spec_from_dict",
    "spec_from_json",
    "load_spec",
    "discretize",
    "diameter",
    "layered_ball",
    "SCHEMES",
]

SCHEMES = ("grid", "boundary", "native")

# subsamples per axis when clipping lattice cells to a ball
_CLIP_SUBSAMPLES = {1: 64, 2: 16, 3: 8}


def _unit_ball_volume(d):
    return math.pi ** (d / 2) / math.gamma(d / 2 + 1)


def _vec(values, name):
    arr = np.asarray(values, dtype=float).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} must be finite")
    return arr


class SetSpec:
    """Base class of compact-set descriptions."""

    dim: int

    def scaled(self, s):
        raise NotImplementedError

    def to_dict(self):
        raise NotImplementedError

    def measure(self):
        """Lebesgue measure in the ambient dimension, or None if unknown."""
        return None

    def native_dim(self):
        return self.dim

    @property
    def default_scheme(self):
        return "grid"


@dataclass(frozen=True)
class Ball(SetSpec):
    dim: int
    center: np.ndarray
    radius: float

    def __post_init__(self):
        center = _vec(self.center, "center")
        if int(self.dim) != self.dim or self.dim < 1:
            raise InvalidInputError(f"dim must be a positive integer, got {self.dim!r}")
        if center.size != self.dim:
            raise InvalidInputError(f"center needs {self.dim} coordinates, got {center.size}")
        if not float(self.radius) > 0:
            raise InvalidInputError(f"radius must be positive, got {self.radius!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "radius", float(self.radius))

    def scaled(self, s):
        return Ball(self.dim, self.center * s, self.radius * s)

    def to_dict(self):
        return {"type": "ball", "dim": self.dim, "center": self.center.tolist(), "radius": self.radius}

    def measure(self):
        return _unit_ball_volume(self.dim) * self.radius**self.dim


@dataclass(frozen=True)
class Sphere(SetSpec):
    dim: int
    center: np.ndarray
    radius: float

    __post_init__ = Ball.__post_init__

    def scaled(self, s):
        return Sphere(self.dim, self.center * s, self.radius * s)

    def to_dict(self):
        return {"type": "sphere", "dim": self.dim, "center": self.center.tolist(), "radius": self.radius}

    def measure(self):
        return 0.0

    def native_dim(self):
        return self.dim - 1

    @property
    def default_scheme(self):
        return "boundary"


@dataclass(frozen=True)
class Interval(SetSpec):
    a: float
    b: float
    dim: int = field(default=1, init=False)

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
            raise InvalidInputError(f"interval needs finite a < b, got ({self.a!r}, {self.b!r})")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    def scaled(self, s):
        return Interval(self.a * s, self.b * s)

    def to_dict(self):
        return {"type": "interval", "a": self.a, "b": self.b}

    def measure(self):
        return self.b - self.a


@dataclass(frozen=True)
class Box(SetSpec):
    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo, hi = _vec(self.lo, "lo"), _vec(self.hi, "hi")
        if lo.size != hi.size or lo.size == 0:
            raise InvalidInputError("box corners must have the same positive length")
        if not np.all(lo < hi):
            raise InvalidInputError("box corners must satisfy lo < hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def dim(self):
        return int(self.lo.size)

    def scaled(self, s):
        return Box(self.lo * s, self.hi * s)

    def to_dict(self):
        return {"type": "box", "lo": self.lo.tolist(), "hi": self.hi.tolist()}

    def measure(self):
        return float(np.prod(self.hi - self.lo))


@dataclass(frozen=True)
class Points(SetSpec):
    coords: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coords, dtype=float)
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2 or arr.shape[0] == 0:
            raise InvalidInputError("points need a nonempty list of coordinate vectors")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("point coordinates must be finite")
        if arr.shape[0] > 1:
            d = backend.pairwise_distances(arr)
            np.fill_diagonal(d, np.inf)
            if np.min(d) == 0.0:
                raise InvalidInputError("points must be pairwise distinct")
        object.__setattr__(self, "coords", arr)

    @property
    def dim(self):
        return int(self.coords.shape[1])

    def scaled(self, s):
        return Points(self.coords * s)

    def to_dict(self):
        return {"type": "points", "coords": self.coords.tolist()}

    def measure(self):
        return 0.0

    def native_dim(self):
        return 0


@dataclass(frozen=True)
class Union(SetSpec):
    parts: tuple

    def __post_init__(self):
        parts = tuple(self.parts)
        if not parts:
            raise InvalidInputError("union needs at least one part")
        dims = {p.dim for p in parts}
        if len(dims) != 1:
            raise InvalidInputError(f"union parts must share the ambient dimension, got {sorted(dims)}")
        object.__setattr__(self, "parts", parts)

    @property
    def dim(self):
        return self.parts[0].dim

    def scaled(self, s):
        return Union(tuple(p.scaled(s) for p in self.parts))

    def to_dict(self):
        return {"type": "union", "parts": [p.to_dict() for p in self.parts]}

    def native_dim(self):
        return max(p.native_dim() for p in self.parts)

    @property
    def default_scheme(self):
        schemes = {p.default_scheme for p in self.parts}
        return schemes.pop() if len(schemes) == 1 else "grid"


def spec_from_dict(doc):
    """Build a SetSpec from its JSON document form."""
    if not isinstance(doc, dict) or "type" not in doc:
        raise InvalidInputError("set spec must be an object with a 'type' field")
    kind = doc["type"]
    try:
        if kind == "ball":
            return Ball(doc["dim"], doc["center"], doc["radius"])
        if kind == "sphere":
            return Sphere(doc["dim"], doc["center"], doc["radius"])
        if kind == "interval":
            return Interval(doc["a"], doc["b"])
        if kind == "box":
            return Box(doc["lo"], doc["hi"])
        if kind == "points":
            return Points(doc["coords"])
        if kind == "union":
            return Union(tuple(spec_from_dict(p) for p in doc["parts"]))
    except KeyError as exc:
        raise InvalidInputError(f"set spec of type {kind!r} is missing field {exc}") from None
    raise InvalidInputError(f"unknown set type {kind!r}")


def spec_from_json(text):
    return spec_from_dict(json.loads(text))


def load_spec(path):
    with open(path) as fh:
        return spec_from_dict(json.load(fh))


@dataclass(frozen=True, eq=False)
class NodeCloud:
    """Discretized set: nodes, cell measures, and per-node native dimension.

    Attributes
    ----------
    nodes : ndarray, shape (N, dim)
    cell_measures : ndarray, shape (N,)
        Positive masses of the discretization cells, measured in each node's
        native dimension (length, area, volume; 1 for isolated points).
    native_dims : ndarray of int, shape (N,)
    mesh_size : float
        Largest cell radius h.
    """

    nodes: np.ndarray
    cell_measures: np.ndarray
    native_dims: np.ndarray
    mesh_size: float

    def __post_init__(self):
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        if nodes.ndim == 1:
            nodes = nodes[:, None]
        cm = np.ascontiguousarray(self.cell_measures, dtype=float).reshape(-1)
        nd = np.broadcast_to(np.asarray(self.native_dims, dtype=int), cm.shape).copy()
        if nodes.shape[0] == 0:
            raise InvalidInputError("a node cloud needs at least one node")
        if cm.size != nodes.shape[0]:
            raise InvalidInputError("cell_measures must align with nodes")
        if not np.all(cm > 0):
            raise InvalidInputError("cell measures must be positive")
        if not float(self.mesh_size) > 0:
            raise InvalidInputError("mesh size must be positive")
        for arr in (nodes, cm, nd):
            arr.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "cell_measures", cm)
        object.__setattr__(self, "native_dims", nd)
        object.__setattr__(self, "mesh_size", float(self.mesh_size))

    @property
    def dim(self):
        return int(self.nodes.shape[1])

    def __len__(self):
        return int(self.nodes.shape[0])

    @cached_property
    def distances(self):
        """Pairwise distance matrix, computed once per cloud."""
        d = backend.pairwise_distances(self.nodes)
        d.setflags(write=False)
        return d

    @cached_property
    def cell_radii(self):
        """h_i = (cell measure / unit-ball volume)^(1/d) in each node's native dimension."""
        out = np.empty(len(self))
        for d in np.unique(self.native_dims):
            sel = self.native_dims == d
            if d == 0:
                out[sel] = np.nan
            else:
                out[sel] = (self.cell_measures[sel] / _unit_ball_volume(d)) ** (1.0 / d)
        return out

    def scaled(self, s):
        s = float(s)
        return NodeCloud(
            self.nodes * s,
            self.cell_measures * s ** self.native_dims.astype(float),
            self.native_dims,
            self.mesh_size * s,
        )

    def transformed(self, rotation, shift):
        rot = np.asarray(rotation, dtype=float)
        return NodeCloud(self.nodes @ rot.T + shift, self.cell_measures, self.native_dims, self.mesh_size)

    def permuted(self, perm):
        perm = np.asarray(perm)
        return NodeCloud(self.nodes[perm], self.cell_measures[perm], self.native_dims[perm], self.mesh_size)

    def subset(self, idx):
        idx = np.asarray(idx)
        return NodeCloud(self.nodes[idx], self.cell_measures[idx], self.native_dims[idx], self.mesh_size)


def diameter(cloud):
    """Largest pairwise Euclidean distance between nodes (0 for one node)."""
    if isinstance(cloud, NodeCloud):
        if len(cloud) == 1:
            return 0.0
        return float(np.max(cloud.distances))
    pts = np.asarray(cloud, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    if pts.shape[0] == 0:
        raise InvalidInputError("diameter of an empty node set")
    if pts.shape[0] == 1:
        return 0.0
    return float(np.max(backend.pairwise_distances(pts)))


# -- discretizers ------------------------------------------------------------


def _interval_grid(a, b, n):
    h = (b - a) / n
    nodes = a + h * (np.arange(n) + 0.5)
    return NodeCloud(nodes, np.full(n, h), 1, h / 2)


def _interval_chebyshev(a, b, n):
    # Chebyshev-Lobatto points, endpoints included; cells are Voronoi segments
    t = -np.cos(np.pi * np.arange(n) / (n - 1))
    t[0], t[-1] = -1.0, 1.0
    if n % 2 == 1:
        t[n // 2] = 0.0
    mid, half = (a + b) / 2, (b - a) / 2
    nodes = mid + half * t
    edges = np.concatenate(([-1.0], (t[1:] + t[:-1]) / 2, [1.0]))
    cells = half * np.diff(edges)
    return NodeCloud(nodes, cells, 1, float(np.max(cells)) / 2)


def _fibonacci_sphere(n):
    i = np.arange(n) + 0.5
    z = 1.0 - 2.0 * i / n
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    golden_angle = math.pi * (3.0 - math.sqrt(5.0))
    theta = golden_angle * np.arange(n)
    return np.column_stack((r * np.cos(theta), r * np.sin(theta), z))


def _sphere_nodes(n_dim, center, radius, n):
    if n_dim == 2:
        theta = 2.0 * math.pi * np.arange(n) / n
        unit = np.column_stack((np.cos(theta), np.sin(theta)))
        area = 2.0 * math.pi
    elif n_dim == 3:
        unit = _fibonacci_sphere(n)
        area = 4.0 * math.pi
    else:
        raise UnsupportedError(f"boundary nodes are implemented for spheres in R^2 and R^3, not R^{n_dim}")
    cell = area * radius ** (n_dim - 1) / n
    h = radius * math.sqrt(area / n) if n_dim == 3 else radius * math.pi / n
    return NodeCloud(center + radius * unit, np.full(n, cell), n_dim - 1, h)


def _cells_meeting_ball(n_dim, h):
    m = int(math.ceil(1.0 / h))
    axis = (np.arange(-m, m) + 0.5) * h
    centers = np.array(list(itertools.product(axis, repeat=n_dim)))
    reach = np.linalg.norm(np.maximum(np.abs(centers) - h / 2, 0.0), axis=1)
    return centers[reach < 1.0]


def _ball_grid(n_dim, center, radius, n):
    """Uniform lattice cells clipped to the ball; nodes at clipped-cell centroids."""
    h = (_unit_ball_volume(n_dim) / n) ** (1.0 / n_dim)
    for _ in range(4):
        centers = _cells_meeting_ball(n_dim, h)
        h *= (len(centers) / n) ** (1.0 / n_dim)
    centers = _cells_meeting_ball(n_dim, h)
    sub = _CLIP_SUBSAMPLES.get(n_dim, 4)
    offs = (np.arange(sub) + 0.5) / sub * h - h / 2
    offsets = np.array(list(itertools.product(offs, repeat=n_dim)))
    nodes, cells = [], []
    for start in range(0, len(centers), 512):
        block = centers[start : start + 512]
        samples = block[:, None, :] + offsets[None, :, :]
        inside = np.einsum("ijk,ijk->ij", samples, samples) <= 1.0
        count = inside.sum(axis=1)
        keep = count > 0
        centroid = np.einsum("ijk,ij->ik", samples, inside)[keep] / count[keep, None]
        nodes.append(centroid)
        cells.append(count[keep] / offsets.shape[0] * h**n_dim)
    nodes = np.concatenate(nodes)
    cells = np.concatenate(cells)
    # subsampling misjudges clipped cells systematically; rescale them so
    # the cells add up to the exact volume
    full = h**n_dim
    clipped = cells < full
    if np.any(clipped):
        cells[clipped] *= (_unit_ball_volume(n_dim) - full * np.count_nonzero(~clipped)) / cells[clipped].sum()
    half_diag = h * math.sqrt(n_dim) / 2
    return NodeCloud(center + radius * nodes, cells * radius**n_dim, n_dim, radius * half_diag)


def _box_grid(lo, hi, n):
    sides = hi - lo
    d = sides.size
    h = (float(np.prod(sides)) / n) ** (1.0 / d)
    counts = np.maximum(1, np.rint(sides / h)).astype(int)
    axes = [lo[k] + sides[k] / counts[k] * (np.arange(counts[k]) + 0.5) for k in range(d)]
    nodes = np.array(list(itertools.product(*axes)))
    steps = sides / counts
    cell = float(np.prod(steps))
    return NodeCloud(nodes, np.full(len(nodes), cell), d, float(np.linalg.norm(steps)) / 2)


def _points_cloud(spec):
    coords = spec.coords
    if len(coords) > 1:
        dist = backend.pairwise_distances(coords)
        np.fill_diagonal(dist, np.inf)
        h = float(np.min(dist)) / 2
    else:
        h = 1.0
    return NodeCloud(coords, np.ones(len(coords)), 0, h)


def _dedupe(cloud, tol):
    keep = []
    nodes = cloud.nodes
    for i in range(len(cloud)):
        if keep:
            gaps = np.linalg.norm(nodes[keep] - nodes[i], axis=1)
            if np.min(gaps) <= tol:
                continue
        keep.append(i)
    return cloud.subset(keep)


def _union_cloud(spec, n, scheme):
    share = max(2, int(round(n / len(spec.parts))))
    clouds = [discretize(part, share, scheme) for part in spec.parts]
    merged = NodeCloud(
        np.concatenate([c.nodes for c in clouds]),
        np.concatenate([c.cell_measures for c in clouds]),
        np.concatenate([c.native_dims for c in clouds]),
        max(c.mesh_size for c in clouds),
    )
    return _dedupe(merged, merged.mesh_size / 10)


def discretize(spec, n, scheme="native"):
    """Discretize ``spec`` into roughly ``n`` nodes.

    Parameters
    ----------
    spec : SetSpec
    n : int
        Target node count (>= 2); the result is within a factor 2 of it.
    scheme : {"grid", "boundary", "native"}
        ``grid`` places volume nodes on a uniform lattice clipped to the set;
        ``boundary`` places surface nodes (equal angles on circles, a Fibonacci
        lattice on 2-spheres, Chebyshev-Lobatto points with endpoints on
        intervals); ``native`` is ``boundary`` for spheres and ``grid``
        otherwise.

    Raises
    ------
    UnsupportedError
        For scheme/set combinations without a discretizer.
    """
    n = int(n)
    if n < 2:
        raise InvalidInputError(f"target node count must be >= 2, got {n}")
    if scheme not in SCHEMES:
        raise InvalidInputError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if scheme == "native" and not isinstance(spec, Union):
        scheme = spec.default_scheme

    if isinstance(spec, Points):
        return _points_cloud(spec)
    if isinstance(spec, Union):
        return _union_cloud(spec, n, scheme)
    if isinstance(spec, Interval) or (isinstance(spec, Ball) and spec.dim == 1):
        if isinstance(spec, Ball):
            a, b = spec.center[0] - spec.radius, spec.center[0] + spec.radius
        else:
            a, b = spec.a, spec.b
        return _interval_grid(a, b, n) if scheme == "grid" else _interval_chebyshev(a, b, n)
    if isinstance(spec, Sphere):
        if scheme == "grid":
            raise UnsupportedError("a sphere has no volume; use the boundary scheme")
        return _sphere_nodes(spec.dim, spec.center, spec.radius, n)
    if isinstance(spec, Ball):
        if scheme == "boundary":
            return _sphere_nodes(spec.dim, spec.center, spec.radius, n)
        return _ball_grid(spec.dim, spec.center, spec.radius, n)
    if isinstance(spec, Box):
        if scheme == "boundary":
            raise UnsupportedError("boundary nodes are not implemented for boxes")
        return _box_grid(spec.lo, spec.hi, n)
    raise UnsupportedError(f"no discretizer for {type(spec).__name__}")


def layered_ball(spec, n):
    """Volume grid of a ball plus a layer of nodes on its bounding sphere.

    Suits equilibrium measures whose density blows up at the boundary without
    a surface part: the sphere nodes let the solver place the near-boundary
    mass where it concentrates.  The sphere nodes are spaced like the grid and
    the total is close to ``n``.  Balls in R^2 and R^3 only.
    """
    if not isinstance(spec, Ball) or spec.dim not in (2, 3):
        raise UnsupportedError("layered discretization is implemented for balls in R^2 and R^3")
    d = spec.dim
    vol = _unit_ball_volume(d)
    area = d * vol
    n_grid = float(n)
    for _ in range(50):
        h = (vol / n_grid) ** (1.0 / d)
        n_shell = area / h ** (d - 1)
        n_grid = max(2.0, n - n_shell)
    grid = _ball_grid(d, spec.center, spec.radius, max(2, int(round(n_grid))))
    shell = _sphere_nodes(d, spec.center, spec.radius, max(3, int(round(n_shell))))
    return NodeCloud(
        np.concatenate((grid.nodes, shell.nodes)),
        np.concatenate((grid.cell_measures, shell.cell_measures)),
        np.concatenate((grid.native_dims, shell.native_dims)),
        max(grid.mesh_size, shell.mesh_size),
    )
