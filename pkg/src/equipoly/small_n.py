"""Equilateral, equiangular triangles, quadrilaterals and pentagons.

Quadrilaterals use an apex placement: P0 = (-S, 0, 0), P2 = (S, 0, 0) and the
apexes P1, P3 on the circle {x = 0, y^2 + z^2 = C^2}, separated by the fold
angle delta. Every edge has unit length and the apex angles equal theta for any
delta; the angles at P0 and P2 both reduce to cos(delta) = 1 - 2 tan^2(theta/2).
So solutions exist for 0 <= theta <= pi/2 and the planar square sits at pi/2.

Pentagons use P0 = 0, P1 = e_x, P4 = (cos theta, sin theta, 0), with P2 and P3
swung about the edges at dihedral angles phi2, phi3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import BondAngle, Polygon
from .hexagon import ANGLE_TOL, ClassTag, ConfigSpaceClass

PI_5 = math.pi / 5
THREE_PI_5 = 3 * math.pi / 5
SQUARE_ANGLE = math.pi / 2


class PentagonParams(NamedTuple):
    phi2: float
    phi3: float


@dataclass(frozen=True)
class FoldAngle:
    """Signed dihedral separation delta of the two quadrilateral apexes."""

    theta: float
    delta: float

    @classmethod
    def solve(cls, theta, sign: int = 1) -> FoldAngle:
        return cls(BondAngle.coerce(theta).theta, sign * fold_angle(theta))

    def vertices(self) -> np.ndarray:
        return quadrilateral_vertices(self.theta, self.delta)


def fold_cosine(theta) -> float:
    """cos(delta) required of a quadrilateral with bond angle theta."""
    return 1.0 - 2.0 * math.tan(BondAngle.coerce(theta).theta / 2) ** 2


def fold_angle(theta) -> float:
    """Fold angle delta in [0, pi]; ValueError when no quadrilateral exists."""
    th = BondAngle.coerce(theta).theta
    if th < -ANGLE_TOL or th > SQUARE_ANGLE + ANGLE_TOL:
        raise ValueError(f"no equilateral equiangular quadrilateral at theta = {th}")
    if abs(th - SQUARE_ANGLE) <= ANGLE_TOL:
        return math.pi
    # sin(delta/2) = tan(theta/2), equivalent to the cosine form but better conditioned.
    return 2.0 * math.asin(min(1.0, math.tan(max(th, 0.0) / 2)))


def quadrilateral_vertices(theta, delta) -> np.ndarray:
    """Vectorized apex placement: delta of shape (...,) -> vertices (..., 4, 3).

    P1 sits at angle pi - delta/2 and P3 at pi + delta/2 on the apex circle.
    """
    bond = BondAngle.coerce(theta)
    C, S = bond.C, bond.S
    delta = np.asarray(delta, dtype=float)
    out = np.zeros(delta.shape + (4, 3))
    out[..., 0, 0] = -S
    out[..., 2, 0] = S
    out[..., 1, 1] = -C * np.cos(delta / 2)
    out[..., 1, 2] = C * np.sin(delta / 2)
    out[..., 3, 1] = -C * np.cos(delta / 2)
    out[..., 3, 2] = -C * np.sin(delta / 2)
    return out


def pentagon_vertices(theta, phis) -> np.ndarray:
    """Vectorized pentagon placement: phis (..., 2) = (phi2, phi3) -> vertices (..., 5, 3)."""
    th = BondAngle.coerce(theta).theta
    ct, st = math.cos(th), math.sin(th)
    phis = np.asarray(phis, dtype=float)
    out = np.zeros(phis.shape[:-1] + (5, 3))
    out[..., 1, 0] = 1.0
    out[..., 4, :] = (ct, st, 0.0)
    out[..., 2, 0] = 1 - ct
    out[..., 2, 1] = st * np.cos(phis[..., 0])
    out[..., 2, 2] = st * np.sin(phis[..., 0])
    # Reflection across the bisector of angle P1 P0 P4 applied to the same construction.
    q = np.stack([np.full(phis.shape[:-1], 1 - ct), st * np.cos(phis[..., 1]), st * np.sin(phis[..., 1])], axis=-1)
    refl = np.array([[ct, st, 0.0], [st, -ct, 0.0], [0.0, 0.0, 1.0]])
    out[..., 3, :] = q @ refl.T
    return out


def pentagon_dihedral_cosine(theta) -> float:
    """cos(phi2) = cos(phi3) forced by |P2 P4| = |P1 P3| = 2 sin(theta/2)."""
    c = math.cos(BondAngle.coerce(theta).theta)
    return (1 - 2 * c + 2 * c * c) / (2 * (1 - c * c))


def pentagon_equation_residual(theta, phi2: float, phi3: float) -> float:
    """LHS - RHS of the reduced pentagon equation from the edge-angle condition at P2."""
    th = BondAngle.coerce(theta).theta
    if abs(th) <= ANGLE_TOL or abs(th - math.pi) <= ANGLE_TOL:
        raise ValueError("the pentagon equation needs theta not in {0, pi}")
    c, s = math.cos(th), math.sin(th)
    lhs = (-4 * c * c + 2 * c + 1) / (4 * (1 - c))
    return lhs - s * s * math.sin(phi2) * (math.sin(phi2) - math.sin(phi3))


def classify_small(n: int, theta) -> ConfigSpaceClass:
    """Configuration space class for n = 3, 4, 5.

    The quadrilateral case follows the fold-angle condition: one point at
    theta = 0 (4-folded edge) and pi/2 (square), a mirror pair in between.
    """
    th = BondAngle.coerce(theta).theta
    near = lambda v: abs(th - v) <= ANGLE_TOL
    if n == 3:
        if near(math.pi / 3):
            return ConfigSpaceClass(ClassTag.SinglePoint, "regular triangle")
        return ConfigSpaceClass(ClassTag.Empty, "")
    if n == 5:
        if near(PI_5):
            return ConfigSpaceClass(ClassTag.SinglePoint, "regular star pentagon")
        if near(THREE_PI_5):
            return ConfigSpaceClass(ClassTag.SinglePoint, "regular pentagon")
        return ConfigSpaceClass(ClassTag.Empty, "")
    if n == 4:
        if near(0.0):
            return ConfigSpaceClass(ClassTag.SinglePoint, "4-folded edge")
        if near(SQUARE_ANGLE):
            return ConfigSpaceClass(ClassTag.SinglePoint, "planar square")
        if 0 < th < SQUARE_ANGLE:
            return ConfigSpaceClass(ClassTag.TwoPoints, "folded rhombus and its mirror image")
        return ConfigSpaceClass(ClassTag.Empty, "")
    raise ValueError(f"classify_small handles n = 3, 4, 5, got {n}")


def construct_small(n: int, theta, sign: int = 1) -> Polygon:
    """A representative polygon; ``sign`` picks the mirror image where one exists."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    th = BondAngle.coerce(theta).theta
    if classify_small(n, th).tag is ClassTag.Empty:
        raise ValueError(f"no equilateral {th}-equiangular {n}-gon")
    if n == 3:
        h = math.sqrt(3) / 2
        return Polygon([(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.5, h, 0.0)])
    if n == 4:
        return Polygon(FoldAngle.solve(th, sign).vertices())
    return Polygon(pentagon_vertices(th, (0.0, 0.0)))
