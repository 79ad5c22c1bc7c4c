"""The exceptional bond angle theta = pi/3.

At pi/3 the reduced angle condition factors as
cos(phi_i/2) cos(phi_j/2) (cos(phi_i/2) cos(phi_j/2) - 2 sin(phi_i/2) sin(phi_j/2)) = 0,
so every adjacent pair either contains a pi or is related by the involution
``f_map``. This yields six circles of configurations meeting at four planar
hexagons A, B, C, D, plus the two chairs.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .geometry import residual, wrap_angle
from .hexagon import PI_3, TorusPoint, build_hexagon

CHAIR_ANGLE = math.acos(1.0 / 3.0)
FAMILY_TOL = 1e-9


def f_map(phi: float) -> float:
    """Partner angle: tan(f/2) = 1 / (2 tan(phi/2)), with f(0) = pi and f(pi) = 0."""
    phi = wrap_angle(phi)
    if phi == 0.0:
        return math.pi
    if phi == math.pi:
        return 0.0
    # cos(phi/2) >= 0 on (-pi, pi]; a jump of pi in atan2 doubles to 2pi and wraps away.
    return wrap_angle(2.0 * math.atan2(math.cos(phi / 2), 2.0 * math.sin(phi / 2)))


def f_map_quotient(phi: float) -> tuple[float, float]:
    """(cos f, sin f) from the rational expression in cos(phi), sin(phi); undefined at phi = pi."""
    c, s = math.cos(phi), math.sin(phi)
    den = (c + 1) ** 2 + 4 * s**2
    return (-((c + 1) ** 2) + 4 * s**2) / den, 4 * s * (c + 1) / den


class Pi3Kind(enum.Enum):
    PiPiPhi = "PiPiPhi"
    PhiPiF = "PhiPiF"
    Chair = "Chair"


SLOTS = (1, 3, 5)


@dataclass(frozen=True)
class Pi3Family:
    """One family of pi/3 configurations.

    PiPiPhi: ``slot`` holds the free angle, the other two are pi.
    PhiPiF: ``slot`` holds pi; ``order`` gives which remaining slot carries phi
    (the other carries f(phi)).
    Chair: ``sign`` selects the chair or its mirror.
    """

    kind: Pi3Kind
    slot: int = 0
    order: tuple[int, int] = ()
    sign: int = 1

    def point(self, phi: float = 0.0) -> TorusPoint:
        if self.kind is Pi3Kind.Chair:
            a = self.sign * CHAIR_ANGLE
            return TorusPoint(a, a, a)
        vals = {s: math.pi for s in SLOTS}
        if self.kind is Pi3Kind.PiPiPhi:
            vals[self.slot] = phi
        else:
            first, second = self.order
            vals[first] = phi
            vals[second] = f_map(phi)
        return TorusPoint(vals[1], vals[3], vals[5])

    def label(self) -> str:
        if self.kind is Pi3Kind.Chair:
            return f"chair{'+' if self.sign > 0 else '-'}"
        names = {s: "pi" for s in SLOTS}
        if self.kind is Pi3Kind.PiPiPhi:
            names[self.slot] = "phi"
        else:
            names[self.order[0]], names[self.order[1]] = "phi", "f(phi)"
        return "(" + ", ".join(names[s] for s in SLOTS) + ")"


def _max_residual(t: TorusPoint) -> float:
    return residual(build_hexagon(PI_3, t), PI_3).max_residual


def _candidate_families() -> list[Pi3Family]:
    out = [Pi3Family(Pi3Kind.PiPiPhi, slot=s) for s in SLOTS]
    for s in SLOTS:
        rest = [r for r in SLOTS if r != s]
        out.extend(Pi3Family(Pi3Kind.PhiPiF, slot=s, order=o) for o in itertools.permutations(rest))
    return out


def validated_families(probes: int = 24) -> list[Pi3Family]:
    """Circle families whose every probe point passes the residual test.

    Orderings (phi, f(phi)) and (f(phi), phi) trace the same circle because f is
    an involution; only the first passing ordering per pi-slot is kept.
    """
    phis = -math.pi + 2 * math.pi * (np.arange(probes) + 0.5) / probes
    kept: list[Pi3Family] = []
    seen_slots = set()
    for fam in _candidate_families():
        if fam.kind is Pi3Kind.PhiPiF and fam.slot in seen_slots:
            continue
        if all(_max_residual(fam.point(p)) < FAMILY_TOL for p in phis):
            kept.append(fam)
            if fam.kind is Pi3Kind.PhiPiF:
                seen_slots.add(fam.slot)
    return kept


def pi3_families(samples: int = 64) -> list[tuple[Pi3Family, TorusPoint]]:
    """Sampled points of all six circles (uniform in phi, phi = 0 and pi exact) and the chairs."""
    if samples < 4:
        raise ValueError("samples must be at least 4")
    phis = [wrap_angle(-math.pi + 2 * math.pi * k / samples) for k in range(samples)]
    if 0.0 not in phis:
        phis.append(0.0)
    if math.pi not in phis:
        phis.append(math.pi)
    phis.sort()
    out = []
    for fam in validated_families():
        out.extend((fam, fam.point(p)) for p in phis)
    for sign in (1, -1):
        fam = Pi3Family(Pi3Kind.Chair, sign=sign)
        out.append((fam, fam.point()))
    return out


VERTICES = {
    "A": TorusPoint(math.pi, math.pi, math.pi),
    "B": TorusPoint(math.pi, math.pi, 0.0),
    "C": TorusPoint(0.0, math.pi, math.pi),
    "D": TorusPoint(math.pi, 0.0, math.pi),
}


@dataclass
class Pi3Graph:
    """The graph X: four planar configurations joined by six circles, each circle two edges."""

    vertices: dict[str, TorusPoint]
    circles: list[tuple[Pi3Family, tuple[str, str]]]
    edges: list[tuple[str, str, Pi3Family, int]] = field(default_factory=list)

    @property
    def connected(self) -> bool:
        names = sorted(self.vertices)
        idx = {v: i for i, v in enumerate(names)}
        rows = [idx[a] for a, b, *_ in self.edges]
        cols = [idx[b] for a, b, *_ in self.edges]
        adj = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(names),) * 2)
        return connected_components(adj, directed=False)[0] == 1

    def edge_multiplicity(self) -> dict[frozenset, int]:
        out: dict[frozenset, int] = {}
        for a, b, *_ in self.edges:
            key = frozenset((a, b))
            out[key] = out.get(key, 0) + 1
        return out


def _vertices_on(fam: Pi3Family) -> tuple[str, str]:
    hits = []
    for phi in (0.0, math.pi):
        t = fam.point(phi)
        for name, v in VERTICES.items():
            if t.distance(v) < 1e-12 and name not in hits:
                hits.append(name)
    if len(hits) != 2:
        raise AssertionError(f"circle {fam.label()} meets {hits}, expected two vertices")
    return tuple(sorted(hits))


def pi3_graph() -> Pi3Graph:
    circles = [(fam, _vertices_on(fam)) for fam in validated_families()]
    edges = []
    for fam, (a, b) in circles:
        # The circle splits into the arcs phi in (0, pi) and (-pi, 0).
        edges.append((a, b, fam, +1))
        edges.append((a, b, fam, -1))
    graph = Pi3Graph(dict(VERTICES), circles, edges)
    mult = graph.edge_multiplicity()
    if len(circles) != 6 or len(edges) != 12 or len(mult) != 6 or set(mult.values()) != {2}:
        raise AssertionError("X is not a tetrahedron 1-skeleton with doubled edges")
    if not graph.connected:
        raise AssertionError("X is not connected")
    return graph
