"""Equilateral, equiangular hexagons through the double-cone parameterization.

The even vertices P0, P2, P4 are pinned to a regular triangle of side 2S in the
plane z = 0. Each odd vertex P_i lies on the circle of radius C centred on the
midpoint of the opposite triangle edge, at dihedral angle phi_i: phi_i = 0 is
planar and outward, phi_i = pi planar and inward. All six edges have unit length
and the odd-vertex angles equal theta for every (phi1, phi3, phi5); the three
even-vertex angles are what constrain the torus point.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .geometry import BondAngle, Polygon, torus_distance, wrap_angle

SQRT3 = math.sqrt(3.0)
ANGLE_TOL = 1e-12
DISC_CLAMP = 1e-9

PI_3 = math.pi / 3
TWO_PI_3 = 2 * math.pi / 3


def near_angle(theta: float, value: float) -> bool:
    return abs(theta - value) <= ANGLE_TOL


@dataclass(frozen=True)
class TorusPoint:
    """Dihedral angles (phi1, phi3, phi5), wrapped to (-pi, pi]."""

    phi1: float
    phi3: float
    phi5: float

    def __post_init__(self):
        for name in ("phi1", "phi3", "phi5"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, wrap_angle(v))

    def __iter__(self):
        return iter((self.phi1, self.phi3, self.phi5))

    def as_array(self) -> np.ndarray:
        return np.array([self.phi1, self.phi3, self.phi5])

    @classmethod
    def from_array(cls, a) -> TorusPoint:
        return cls(*(float(x) for x in a))

    def negated(self) -> TorusPoint:
        return TorusPoint(-self.phi1, -self.phi3, -self.phi5)

    def distance(self, other) -> float:
        return torus_distance(self.as_array(), np.asarray(tuple(other), dtype=float))


@dataclass(frozen=True)
class CoeffTriple:
    """Coefficients of a*cos(phi) + b*sin(phi) = d for the neighbour of phi1.

    ``disc`` is a^2 + b^2 - d^2 computed directly; ``disc_factored`` is the
    factored closed form. ``degenerate`` marks a = b = 0 (theta = pi/3, phi1 = pi).
    """

    a: float
    b: float
    d: float
    disc: float
    disc_factored: float
    degenerate: bool = False


@dataclass(frozen=True)
class AdmissibleSet:
    """Closed arcs (lo, hi) of phi1 for which the angle conditions at P0, P2 are solvable."""

    arcs: tuple[tuple[float, float], ...]

    @property
    def empty(self) -> bool:
        return not self.arcs

    def __contains__(self, phi1) -> bool:
        phi1 = wrap_angle(phi1)
        return any(lo - ANGLE_TOL <= phi1 <= hi + ANGLE_TOL for lo, hi in self.arcs)


class ClassTag(enum.Enum):
    Empty = "Empty"
    SinglePoint = "SinglePoint"
    TwoPoints = "TwoPoints"
    CircleAndTwoPoints = "CircleAndTwoPoints"
    TwoCirclesAndFourPoints = "TwoCirclesAndFourPoints"
    GraphXAndTwoPoints = "GraphXAndTwoPoints"


@dataclass(frozen=True)
class ConfigSpaceClass:
    tag: ClassTag
    detail: str = ""


class FamilyKind(enum.Enum):
    Chair = "Chair"
    Boat = "Boat"
    InwardCrown = "InwardCrown"
    RegularHexagon = "RegularHexagon"
    MultiEdge = "MultiEdge"
    GenericBranch = "GenericBranch"


@dataclass(frozen=True)
class NamedFamily:
    kind: FamilyKind
    sign: int = 1


def base_triangle(theta) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    bond = BondAngle.coerce(theta)
    S = bond.S
    return (np.array([-S, 0.0, 0.0]), np.array([S, 0.0, 0.0]), np.array([0.0, SQRT3 * S, 0.0]))


def hexagon_vertices(theta, phis) -> np.ndarray:
    """Vectorized double-cone hexagons: phis of shape (..., 3) -> vertices (..., 6, 3)."""
    bond = BondAngle.coerce(theta)
    C, S = bond.C, bond.S
    phis = np.asarray(phis, dtype=float)
    c, s = np.cos(phis), np.sin(phis)
    out = np.zeros(phis.shape[:-1] + (6, 3))
    out[..., 0, 0] = -S
    out[..., 2, 0] = S
    out[..., 4, 1] = SQRT3 * S
    out[..., 1, 1] = -C * c[..., 0]
    out[..., 1, 2] = C * s[..., 0]
    out[..., 3, 0] = S / 2 + SQRT3 / 2 * C * c[..., 1]
    out[..., 3, 1] = SQRT3 / 2 * S + C / 2 * c[..., 1]
    out[..., 3, 2] = C * s[..., 1]
    out[..., 5, 0] = -S / 2 - SQRT3 / 2 * C * c[..., 2]
    out[..., 5, 1] = SQRT3 / 2 * S + C / 2 * c[..., 2]
    out[..., 5, 2] = C * s[..., 2]
    return out


def build_hexagon(theta, t) -> Polygon:
    """Hexagon (P0, ..., P5) for the torus point ``t``."""
    return Polygon(hexagon_vertices(theta, np.asarray(tuple(t), dtype=float)))


def angle_condition_residual(theta, phi_i, phi_j):
    """LHS - RHS of the reduced condition for the even vertex between P_i and P_j.

    Zero iff that vertex angle equals theta. The pair (phi1, phi3) governs P2,
    (phi3, phi5) governs P4 and (phi5, phi1) governs P0.
    """
    bond = BondAngle.coerce(theta)
    C, S = bond.C, bond.S
    lhs = C**2 * (np.cos(phi_i) * np.cos(phi_j) - 2 * np.sin(phi_i) * np.sin(phi_j)) + SQRT3 * S * C * (
        np.cos(phi_i) + np.cos(phi_j)
    )
    return lhs - (3 - 5 * C**2)


def disc_factored(theta, phi1):
    bond = BondAngle.coerce(theta)
    C, S = bond.C, bond.S
    cp = np.cos(phi1)
    return -SQRT3 * (C * cp - SQRT3 * S) * (SQRT3 * C * cp - (3 - 8 * C**2) * S)


def sum_of_squares_inline(theta, phi1):
    """The printed shortcut for a^2 + b^2; the true value is C^2 times this."""
    bond = BondAngle.coerce(theta)
    return 4 - (bond.S - SQRT3 * bond.C * np.cos(phi1)) ** 2


def _abd(bond: BondAngle, phi1):
    C, S = bond.C, bond.S
    a = C * (C * np.cos(phi1) + SQRT3 * S)
    b = -2 * C**2 * np.sin(phi1)
    d = 3 - 5 * C**2 - SQRT3 * S * C * np.cos(phi1)
    return a, b, d


def coefficients(theta, phi1: float) -> CoeffTriple:
    bond = BondAngle.coerce(theta)
    a, b, d = (float(x) for x in _abd(bond, phi1))
    degenerate = math.hypot(a, b) < 1e-12
    return CoeffTriple(
        a=a,
        b=b,
        d=d,
        disc=a * a + b * b - d * d,
        disc_factored=float(disc_factored(bond, phi1)),
        degenerate=degenerate,
    )


def _cos_bounds(bond: BondAngle) -> tuple[float, float]:
    """Lower and upper bounds on cos(phi1) for a nonnegative discriminant."""
    C, S = bond.C, bond.S
    if C <= 0:
        return math.inf, -math.inf
    return (3 - 8 * C**2) * S / (SQRT3 * C), SQRT3 * S / C


def admissible_phi1(theta) -> AdmissibleSet:
    bond = BondAngle.coerce(theta)
    if bond.theta < -ANGLE_TOL or bond.theta > TWO_PI_3 + ANGLE_TOL:
        return AdmissibleSet(())
    lower, upper = _cos_bounds(bond)
    if lower > 1 + 1e-12 or upper < lower:
        return AdmissibleSet(())
    # acos is steep at +-1: snap bounds that round to +-1 before inverting.
    snap = lambda c: max(-1.0, min(1.0, c)) if abs(abs(c) - 1) > 1e-12 else math.copysign(1.0, c)
    hi = math.acos(snap(lower))
    lo = math.acos(snap(upper))
    if lo <= ANGLE_TOL:
        return AdmissibleSet(((-hi, hi),))
    return AdmissibleSet(((-hi, -lo), (lo, hi)))


def _branch_solutions(bond: BondAngle, phi1, branch):
    """(phi3, phi5) arrays for arrays of phi1 and branch signs. No validation."""
    a, b, d = _abd(bond, phi1)
    norm = a * a + b * b
    root = np.sqrt(np.maximum(norm - d * d, 0.0))
    x = (a * d + branch * b * root) / norm
    y = (b * d - branch * a * root) / norm
    x5 = (a * d - branch * b * root) / norm
    y5 = (b * d + branch * a * root) / norm
    return np.arctan2(y, x), np.arctan2(y5, x5)


def solve_branch(theta, phi1: float, branch: int) -> TorusPoint:
    """Torus point with the given phi1 on the ``branch`` (+1 or -1) of the generic family.

    phi3 takes the upper-sign root of a*cos + b*sin = d and phi5 the other; the
    third even-vertex condition then holds automatically.
    """
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    bond = BondAngle.coerce(theta)
    coeff = coefficients(bond, phi1)
    if coeff.degenerate:
        raise ValueError("degenerate coefficients (theta = pi/3, phi1 = pi): phi3 is free")
    if coeff.disc < -DISC_CLAMP:
        raise ValueError(f"phi1 = {phi1} is outside the admissible set (disc = {coeff.disc:.3g})")
    phi3, phi5 = _branch_solutions(bond, phi1, branch)
    return TorusPoint(phi1, float(phi3), float(phi5))


def expanded_p3_p5(theta, phi1: float, branch: int) -> tuple[np.ndarray, np.ndarray]:
    """P3 and P5 from the fully expanded coordinate formulas (upper sign = branch +1)."""
    bond = BondAngle.coerce(theta)
    C, S = bond.C, bond.S
    cp, sp = math.cos(phi1), math.sin(phi1)
    root = math.sqrt(max(float(disc_factored(bond, phi1)), 0.0))
    den = 4 - (S - SQRT3 * C * cp) ** 2
    k = 3 - 8 * C**2
    out = []
    for sgn in (branch, -branch):
        x = S - (SQRT3 * C * cp - k * S + sgn * SQRT3 * C * sp * root) / den
        y = 2 / SQRT3 * S - (C * cp - k * S / SQRT3 + sgn * C * sp * root) / den
        z = -(2 * C * (3 - 5 * C**2 - SQRT3 * S * C * cp) * sp + sgn * (C * cp + SQRT3 * S) * root) / den
        out.append(np.array([x, y, z]))
    p3, p5 = out
    p5[0] = -p5[0]
    return p3, p5


def _check_sign(sign: int):
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")


def _named(bond: BondAngle, kind: FamilyKind) -> FamilyKind:
    if near_angle(bond.theta, TWO_PI_3):
        return FamilyKind.RegularHexagon
    if near_angle(bond.theta, 0.0):
        return FamilyKind.MultiEdge
    return kind


def chair(theta, sign: int = 1) -> tuple[TorusPoint, Polygon]:
    """The chair: phi1 = phi3 = phi5 = sign * arccos(S / (sqrt3 C))."""
    _check_sign(sign)
    bond = BondAngle.coerce(theta)
    if bond.theta < -ANGLE_TOL or bond.theta > TWO_PI_3 + ANGLE_TOL:
        raise ValueError("no chair for theta outside [0, 2pi/3]")
    phi = sign * math.acos(min(1.0, bond.S / (SQRT3 * bond.C)))
    t = TorusPoint(phi, phi, phi)
    return t, build_hexagon(bond, t)


def boat(theta, sign: int = 1) -> tuple[TorusPoint, Polygon]:
    """The boat: phi3 = phi5 = chair angle, phi1 on the far cos bound.

    For sign = +1, sin(phi1) = (4C^2 - 3) sqrt(4C^2 - 1) / (sqrt3 C); sign = -1
    is the mirror image.
    """
    _check_sign(sign)
    bond = BondAngle.coerce(theta)
    if bond.theta < -ANGLE_TOL or bond.theta > TWO_PI_3 + ANGLE_TOL:
        raise ValueError("no boat for theta outside [0, 2pi/3]")
    C, S = bond.C, bond.S
    root = math.sqrt(max(4 * C**2 - 1, 0.0))
    phi1 = math.atan2((4 * C**2 - 3) * root / (SQRT3 * C), (3 - 8 * C**2) * S / (SQRT3 * C))
    phi = math.acos(min(1.0, S / (SQRT3 * C)))
    t = TorusPoint(sign * phi1, sign * phi, sign * phi)
    return t, build_hexagon(bond, t)


def inward_crown(theta, sign: int = 1) -> tuple[TorusPoint, Polygon]:
    """The inward crown, phi1 = phi3 = phi5 = sign * arccos(-sqrt3 S / C); needs theta <= pi/3."""
    _check_sign(sign)
    bond = BondAngle.coerce(theta)
    if bond.theta <= 0 or bond.theta > PI_3 + ANGLE_TOL:
        raise ValueError("the inward crown exists only for 0 < theta <= pi/3")
    phi = sign * math.acos(max(-1.0, -SQRT3 * bond.S / bond.C))
    t = TorusPoint(phi, phi, phi)
    return t, build_hexagon(bond, t)


def crown_companion(theta, sign: int = 1) -> tuple[TorusPoint, Polygon]:
    """Inner arc endpoint for 0 < theta < pi/3: phi1 = arccos(sqrt3 S / C), phi3 = phi5 = pi - phi1.

    Shares P3, P5 with the inward crown; P1 is flipped across the xz-plane.
    """
    _check_sign(sign)
    bond = BondAngle.coerce(theta)
    if bond.theta <= 0 or bond.theta > PI_3 + ANGLE_TOL:
        raise ValueError("defined only for 0 < theta <= pi/3")
    phi1 = math.acos(min(1.0, SQRT3 * bond.S / bond.C))
    t = TorusPoint(sign * phi1, sign * (math.pi - phi1), sign * (math.pi - phi1))
    return t, build_hexagon(bond, t)


def classify(theta) -> ConfigSpaceClass:
    """Topology of the hexagon configuration space as a function of the bond angle."""
    th = BondAngle.coerce(theta).theta
    if near_angle(th, 0.0):
        return ConfigSpaceClass(ClassTag.SinglePoint, "6-times covered multiple edge")
    if near_angle(th, TWO_PI_3):
        return ConfigSpaceClass(ClassTag.SinglePoint, "regular hexagon")
    if near_angle(th, PI_3):
        return ConfigSpaceClass(
            ClassTag.GraphXAndTwoPoints,
            "doubled-edge tetrahedron graph X (boats, planar configurations) and two chairs",
        )
    if th < 0 or th > TWO_PI_3:
        return ConfigSpaceClass(ClassTag.Empty, "no equilateral equiangular hexagon")
    if th > PI_3:
        return ConfigSpaceClass(ClassTag.CircleAndTwoPoints, "circle through boat and mirror boat; two chairs")
    return ConfigSpaceClass(
        ClassTag.TwoCirclesAndFourPoints,
        "boat circle and mirror circle; chair, inward crown and their mirror images",
    )


def named_configurations(theta) -> list[tuple[NamedFamily, TorusPoint]]:
    """Named torus points at ``theta``; mirror images carry sign -1."""
    bond = BondAngle.coerce(theta)
    th = bond.theta
    if th < -ANGLE_TOL or th > TWO_PI_3 + ANGLE_TOL:
        return []
    if near_angle(th, TWO_PI_3):
        return [(NamedFamily(FamilyKind.RegularHexagon), TorusPoint(0.0, 0.0, 0.0))]
    out = []
    makers = [(FamilyKind.Chair, chair), (FamilyKind.Boat, boat)]
    if th <= PI_3 + ANGLE_TOL and not near_angle(th, 0.0):
        makers.append((FamilyKind.InwardCrown, inward_crown))
        if not near_angle(th, PI_3):
            makers.append((FamilyKind.GenericBranch, crown_companion))
    for kind, make in makers:
        for sign in (1, -1):
            t, _ = make(bond, sign)
            if any(t.distance(u) < 1e-12 for _, u in out):
                continue
            out.append((NamedFamily(_named(bond, kind), sign), t))
    return out


def isolated_configurations(theta) -> list[tuple[NamedFamily, TorusPoint]]:
    """The named points that are isolated in the configuration space (chairs, crowns, extremes)."""
    keep = {FamilyKind.Chair, FamilyKind.InwardCrown, FamilyKind.RegularHexagon, FamilyKind.MultiEdge}
    th = BondAngle.coerce(theta).theta
    if near_angle(th, PI_3):
        keep = {FamilyKind.Chair}
    return [(f, t) for f, t in named_configurations(theta) if f.kind in keep]


def _loop_arc(bond: BondAngle, loop_id: int) -> tuple[float, float]:
    th = bond.theta
    if PI_3 + ANGLE_TOL < th < TWO_PI_3 - ANGLE_TOL:
        if loop_id != 0:
            raise ValueError("only loop 0 exists for pi/3 < theta < 2pi/3")
    elif ANGLE_TOL < th < PI_3 - ANGLE_TOL:
        if loop_id not in (0, 1):
            raise ValueError("loop_id must be 0 or 1 for 0 < theta < pi/3")
    else:
        raise ValueError(f"no deformation loop at theta = {th}")
    arcs = admissible_phi1(bond).arcs
    return arcs[-1]


def _loop_points(bond: BondAngle, lo: float, hi: float, s: np.ndarray) -> np.ndarray:
    # phi1 = mid - half*cos(s): branch + on the way out (s in [0, pi]), branch - back.
    phi1 = 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(s)
    branch = np.where(np.sin(s) >= 0, 1.0, -1.0)
    phi3, phi5 = _branch_solutions(bond, phi1, branch)
    return np.stack([wrap_angle(phi1), phi3, phi5], axis=-1)


def deformation_loop(theta, loop_id: int = 0, steps: int = 256) -> list[TorusPoint]:
    """Closed discrete loop of ``steps`` torus points (first == last) through the boat.

    Sweeps phi1 across the admissible arc on branch + and back on branch -.
    Points are spaced evenly in torus arc length. Loop 1 (small angles only) is
    the mirror of loop 0.
    """
    if steps < 8:
        raise ValueError("steps must be at least 8")
    bond = BondAngle.coerce(theta)
    lo, hi = _loop_arc(bond, loop_id)
    fine_s = np.linspace(0.0, 2 * np.pi, 64 * steps + 1)
    fine = _loop_points(bond, lo, hi, fine_s)
    seg = torus_distance(fine[1:], fine[:-1])
    arclen = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, arclen[-1], steps)
    s = np.interp(targets, arclen, fine_s)
    pts = _loop_points(bond, lo, hi, s[:-1])
    if loop_id == 1:
        pts = -pts
    out = [TorusPoint.from_array(p) for p in pts]
    out.append(out[0])
    return out
