"""Connected components, loop detection and path queries on solution clouds.

Clouds are first quotiented by their congruence identifications (distinct torus
points representing the same configuration). Components are the connected
pieces of the eps-neighbourhood graph under the torus metric.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .geometry import torus_box, torus_distance
from .oracle import SolutionCloud

LOOP_DIAMETER_FACTOR = 10.0
SHELL = (2.0, 3.0)


class ComponentKind(enum.Enum):
    Loop = "Loop"
    IsolatedPoint = "IsolatedPoint"
    GraphLike = "GraphLike"


@dataclass(frozen=True)
class Component:
    size: int
    diameter: float
    kind: ComponentKind
    sample: tuple[float, ...]
    members: tuple[int, ...]


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[Component, ...]

    @property
    def component_count(self) -> int:
        return len(self.components)

    def counts(self) -> dict[ComponentKind, int]:
        out = {k: 0 for k in ComponentKind}
        for c in self.components:
            out[c.kind] += 1
        return out

    def summary(self) -> str:
        counts = self.counts()
        return ", ".join(f"{counts[k]} {k.value}" for k in ComponentKind)


def _graph_components(n: int, pairs) -> np.ndarray:
    pairs = np.asarray(pairs, dtype=int).reshape(-1, 2)
    adj = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
    return connected_components(adj, directed=False)[1]


def _tree(points: np.ndarray) -> cKDTree:
    return cKDTree(torus_box(points), boxsize=2 * math.pi)


def representatives(cloud: SolutionCloud) -> np.ndarray:
    """Index of the representative (smallest index) of each point's congruence class."""
    n = len(cloud.points)
    if n == 0:
        return np.zeros(0, dtype=int)
    labels = _graph_components(n, cloud.identified)
    rep = np.empty(n, dtype=int)
    for lab in np.unique(labels):
        members = np.flatnonzero(labels == lab)
        rep[members] = members.min()
    return rep


def _diameter(points: np.ndarray) -> float:
    best = 0.0
    for i in range(0, len(points), 512):
        block = torus_distance(points[i : i + 512, None, :], points[None, :, :])
        best = max(best, float(np.max(block)))
    return best


def local_branches(points: np.ndarray, i: int, eps: float, tree: cKDTree | None = None) -> int:
    """Number of curve branches leaving point ``i``.

    Counts eps-clusters among the points in the shell 2 eps < d <= 3 eps: two on
    a simple curve, one at an endpoint, more at a junction.
    """
    tree = tree or _tree(points)
    near = np.array(tree.query_ball_point(torus_box(points[i]), SHELL[1] * eps), dtype=int)
    if near.size == 0:
        return 0
    d = torus_distance(points[near], points[i])
    shell = near[d > SHELL[0] * eps]
    if shell.size == 0:
        return 0
    sub = points[shell]
    pairs = _tree(sub).query_pairs(eps, output_type="ndarray")
    return int(_graph_components(len(sub), pairs).max() + 1)


def components(cloud: SolutionCloud, eps: float) -> ComponentReport:
    """Components of the eps-graph with kind Loop, IsolatedPoint or GraphLike.

    IsolatedPoint: diameter < eps. Loop: every member has exactly two local
    branches and diameter >= 10 eps. Anything else is GraphLike.
    """
    if len(cloud.points) == 0:
        return ComponentReport(())
    rep = representatives(cloud)
    keep = np.flatnonzero(rep == np.arange(len(rep)))
    pts = cloud.points[keep]
    tree = _tree(pts)
    labels = _graph_components(len(pts), tree.query_pairs(eps, output_type="ndarray"))
    out = []
    for lab in range(labels.max() + 1):
        local = np.flatnonzero(labels == lab)
        sub = pts[local]
        diam = _diameter(sub)
        if diam < eps:
            kind = ComponentKind.IsolatedPoint
        else:
            sub_tree = _tree(sub)
            branches = [local_branches(sub, i, eps, sub_tree) for i in range(len(sub))]
            if diam >= LOOP_DIAMETER_FACTOR * eps and all(b == 2 for b in branches):
                kind = ComponentKind.Loop
            else:
                kind = ComponentKind.GraphLike
        members = np.flatnonzero(np.isin(rep, keep[local]))
        out.append(
            Component(
                size=len(local),
                diameter=diam,
                kind=kind,
                sample=tuple(float(x) for x in sub[0]),
                members=tuple(int(m) for m in members),
            )
        )
    # Deterministic and independent of cloud ordering.
    out.sort(key=lambda c: (c.kind.value, -c.size, c.sample))
    return ComponentReport(tuple(out))


def _nearest(cloud: SolutionCloud, p, radius: float) -> int:
    if len(cloud.points) == 0:
        raise ValueError("empty cloud")
    d = torus_distance(cloud.points, np.asarray(tuple(p), dtype=float))
    i = int(np.argmin(d))
    if d[i] > radius:
        raise ValueError(f"point {tuple(p)} is {d[i]:.3g} from the cloud: not a configuration")
    return i


def path_connected(cloud: SolutionCloud, a, b, eps: float) -> bool:
    """True iff a and b fall in the same eps-component of the cloud."""
    ia, ib = _nearest(cloud, a, eps), _nearest(cloud, b, eps)
    report = components(cloud, eps)
    for comp in report.components:
        if ia in comp.members:
            return ib in comp.members
    return False


def isolation_radius(cloud: SolutionCloud, p) -> float:
    """Distance from p to the nearest cloud point that does not represent p itself."""
    i = _nearest(cloud, p, cloud.grid_spacing)
    rep = representatives(cloud)
    others = rep != rep[i]
    if not others.any():
        return math.inf
    return float(np.min(torus_distance(cloud.points[others], np.asarray(tuple(p), dtype=float))))


def trace_loop(points: np.ndarray, eps: float) -> bool:
    """Greedy nearest-neighbour walk through every point; True if it closes within eps."""
    n = len(points)
    if n < 3:
        return False
    visited = np.zeros(n, dtype=bool)
    cur = 0
    visited[0] = True
    for _ in range(n - 1):
        d = torus_distance(points, points[cur])
        d[visited] = np.inf
        nxt = int(np.argmin(d))
        if d[nxt] > eps:
            return False
        visited[nxt] = True
        cur = nxt
    return torus_distance(points[cur], points[0]) <= eps
