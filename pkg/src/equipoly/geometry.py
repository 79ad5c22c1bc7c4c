"""Vectors, polygons and constraint residuals for equilateral, equiangular polygons.

Edge length is fixed to 1 throughout. A polygon is an ordered vertex list in
3-space; closure is implicit (indices mod n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

DEGENERATE_EDGE = 1e-12

# Points and vectors are plain length-3 float arrays.
Vec3 = np.ndarray


class DegenerateEdgeError(ValueError):
    """Raised when two consecutive vertices coincide and an angle is undefined."""


def wrap_angle(x):
    """Wrap radians to (-pi, pi]. Works on scalars and arrays."""
    out = np.pi - np.mod(np.pi - np.asarray(x, dtype=float), 2 * np.pi)
    return float(out) if np.ndim(out) == 0 else out


def torus_box(x) -> np.ndarray:
    """Coordinates mapped into [0, 2pi) for periodic KD-trees."""
    out = np.mod(np.asarray(x, dtype=float), 2 * np.pi)
    # mod of a tiny negative number rounds up to exactly 2pi.
    out[out >= 2 * np.pi] = 0.0
    return out


@dataclass(frozen=True)
class BondAngle:
    """Bond angle theta in [0, pi) with its half-angle cosine C and sine S."""

    theta: float
    C: float = field(init=False)
    S: float = field(init=False)

    def __post_init__(self):
        theta = float(self.theta)
        if not 0.0 <= theta < math.pi:
            raise ValueError(f"bond angle must lie in [0, pi), got {theta}")
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "C", math.cos(theta / 2))
        object.__setattr__(self, "S", math.sin(theta / 2))

    @classmethod
    def coerce(cls, theta: float | BondAngle) -> BondAngle:
        return theta if isinstance(theta, BondAngle) else cls(theta)

    def __float__(self):
        return self.theta


@dataclass(frozen=True, eq=False)
class Polygon:
    """Closed polygon given by an (n, 3) array of vertices."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.array(self.vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 3:
            raise ValueError(f"vertices must have shape (n, 3), got {v.shape}")
        if v.shape[0] < 3:
            raise ValueError("a polygon needs at least 3 vertices")
        if not np.all(np.isfinite(v)):
            raise ValueError("vertices must be finite")
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def n(self) -> int:
        return self.vertices.shape[0]

    def __len__(self):
        return self.n

    def __getitem__(self, i):
        return self.vertices[i % self.n]

    def __array__(self, dtype=None, copy=None):
        return self.vertices if dtype is None else self.vertices.astype(dtype)

    def __eq__(self, other):
        return isinstance(other, Polygon) and np.array_equal(self.vertices, other.vertices)

    def __hash__(self):
        return hash(self.vertices.tobytes())


@dataclass(frozen=True)
class ResidualReport:
    edge_residuals: tuple[float, ...]
    angle_residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.edge_residuals + self.angle_residuals)


def _edges(p: Polygon) -> tuple[np.ndarray, np.ndarray]:
    v = p.vertices
    back = np.roll(v, 1, axis=0) - v
    fwd = np.roll(v, -1, axis=0) - v
    return back, fwd


def vertex_angles(vertices: np.ndarray) -> np.ndarray:
    """Bond angles of a stack of polygons, shape (..., n, 3) -> (..., n).

    No degeneracy checks; used by the batched residual systems.
    """
    back = np.roll(vertices, 1, axis=-2) - vertices
    fwd = np.roll(vertices, -1, axis=-2) - vertices
    cross = np.linalg.norm(np.cross(back, fwd), axis=-1)
    return np.arctan2(cross, np.sum(back * fwd, axis=-1))


def bond_angles(p: Polygon) -> np.ndarray:
    """Angle at each vertex between the rays to its two neighbours, in [0, pi]."""
    _, fwd = _edges(p)
    if np.min(np.linalg.norm(fwd, axis=1)) < DEGENERATE_EDGE:
        raise DegenerateEdgeError("zero-length edge: bond angle undefined")
    return vertex_angles(p.vertices)


def edge_lengths(p: Polygon) -> np.ndarray:
    """Length of edge i, from P_i to P_{i+1}."""
    return np.linalg.norm(np.roll(p.vertices, -1, axis=0) - p.vertices, axis=1)


def residual(p: Polygon, theta: float | BondAngle) -> ResidualReport:
    """Deviation of ``p`` from being unit-equilateral and ``theta``-equiangular."""
    theta = BondAngle.coerce(theta).theta
    angles = bond_angles(p)
    return ResidualReport(
        edge_residuals=tuple(float(e) for e in np.abs(edge_lengths(p) - 1.0)),
        angle_residuals=tuple(float(a) for a in np.abs(angles - theta)),
    )


def mirror_z(p: Polygon) -> Polygon:
    """Reflect through the plane z = 0."""
    return Polygon(p.vertices * np.array([1.0, 1.0, -1.0]))


def rigid_motion(p: Polygon, rotation: np.ndarray, translation=(0.0, 0.0, 0.0)) -> Polygon:
    return Polygon(p.vertices @ np.asarray(rotation).T + np.asarray(translation))


def congruence_rmsd(p: Polygon, q: Polygon) -> float:
    """RMS vertex distance after the best orientation-preserving alignment of q onto p.

    Vertex labels are respected. Kabsch alignment restricted to det = +1.
    """
    if p.n != q.n:
        raise ValueError("polygons must have the same number of vertices")
    a = p.vertices - p.vertices.mean(axis=0)
    b = q.vertices - q.vertices.mean(axis=0)
    u, _, vt = np.linalg.svd(b.T @ a)
    d = np.sign(np.linalg.det(u @ vt)) or 1.0
    rot = u @ np.diag([1.0, 1.0, d]) @ vt
    return float(np.sqrt(np.mean(np.sum((b @ rot - a) ** 2, axis=1))))


def congruent(p: Polygon, q: Polygon, tol: float = 1e-7) -> bool:
    """True if an orientation-preserving isometry maps p onto q vertex by vertex."""
    return congruence_rmsd(p, q) < tol


def torus_distance(a, b) -> np.ndarray | float:
    """Distance on the flat torus: per-axis wrapped difference, Euclidean norm."""
    d = np.mod(np.abs(np.asarray(a, dtype=float) - np.asarray(b, dtype=float)), 2 * np.pi)
    d = np.minimum(d, 2 * np.pi - d)
    out = np.linalg.norm(d, axis=-1)
    return float(out) if np.ndim(out) == 0 else out
