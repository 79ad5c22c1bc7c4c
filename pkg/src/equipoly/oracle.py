"""Brute-force ground truth: grid search plus damped least-squares refinement.

Nothing here uses the closed-form solutions. A residual system only knows how
to place vertices from torus coordinates and measures the bond angles that the
placement does not satisfy by construction, using the generic angle routine.

Grid evaluation and refinement run over fixed-size index blocks; blocks may be
processed by a thread pool (``EQUIPOLY_THREADS``, 0 = auto) and are merged in
block order, so results do not depend on the thread count.
"""

from __future__ import annotations

import math
import os
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

from .geometry import BondAngle, Polygon, congruence_rmsd, residual, torus_box, vertex_angles, wrap_angle
from .hexagon import hexagon_vertices
from .small_n import pentagon_vertices, quadrilateral_vertices

TOL_REFINED = 1e-10
FD_STEP = 1e-6
MAX_ITER = 200
BLOCK = 1 << 15
CONGRUENCE_TOL = 1e-7


def thread_count() -> int:
    raw = os.environ.get("EQUIPOLY_THREADS", "0").strip() or "0"
    n = int(raw)
    return n if n > 0 else (os.cpu_count() or 1)


def _blockwise(fn: Callable[[np.ndarray], np.ndarray], x: np.ndarray, block: int = BLOCK):
    """Apply ``fn`` to consecutive row blocks of ``x`` and concatenate in order."""
    if len(x) <= block:
        return fn(x)
    chunks = [x[i : i + block] for i in range(0, len(x), block)]
    workers = min(thread_count(), len(chunks))
    if workers <= 1:
        parts = [fn(c) for c in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(fn, chunks))
    if isinstance(parts[0], tuple):
        return tuple(np.concatenate(p) for p in zip(*parts))
    return np.concatenate(parts)


@dataclass(frozen=True)
class ResidualSystem:
    """Torus coordinates -> vertices -> residuals of the unconstrained conditions."""

    n: int
    theta: float
    dim: int
    vertices: Callable[[np.ndarray], np.ndarray]
    residuals: Callable[[np.ndarray], np.ndarray]
    labels: tuple[str, ...] = ()

    def eval(self, points) -> np.ndarray:
        pts = np.asarray(points, dtype=float)
        single = pts.ndim == 1
        out = self.residuals(np.atleast_2d(pts))
        return out[0] if single else out

    def polygon(self, point) -> Polygon:
        return Polygon(self.vertices(np.asarray(point, dtype=float)[None, :])[0])


def hexagon_system(theta) -> ResidualSystem:
    """Unknowns (phi1, phi3, phi5); residuals are the angles at P0, P2, P4 minus theta."""
    th = BondAngle.coerce(theta).theta

    def verts(x):
        return hexagon_vertices(th, x)

    def res(x):
        return vertex_angles(verts(x))[:, [0, 2, 4]] - th

    return ResidualSystem(6, th, 3, verts, res, ("phi1", "phi3", "phi5"))


def pentagon_system(theta) -> ResidualSystem:
    """Unknowns (phi2, phi3); residuals |P2 P3| - 1 and the angles at P2, P3."""
    th = BondAngle.coerce(theta).theta

    def verts(x):
        return pentagon_vertices(th, x)

    def res(x):
        v = verts(x)
        ang = vertex_angles(v)
        edge = np.linalg.norm(v[:, 3] - v[:, 2], axis=-1) - 1.0
        return np.stack([edge, ang[:, 2] - th, ang[:, 3] - th], axis=-1)

    return ResidualSystem(5, th, 2, verts, res, ("phi2", "phi3"))


def quadrilateral_system(theta) -> ResidualSystem:
    """Unknown fold angle delta; residuals are the angles at P0, P2 minus theta."""
    th = BondAngle.coerce(theta).theta

    def verts(x):
        return quadrilateral_vertices(th, x[..., 0])

    def res(x):
        return vertex_angles(verts(x))[:, [0, 2]] - th

    return ResidualSystem(4, th, 1, verts, res, ("delta",))


def system_for(n: int, theta) -> ResidualSystem:
    makers = {4: quadrilateral_system, 5: pentagon_system, 6: hexagon_system}
    if n not in makers:
        raise ValueError(f"no residual system for n = {n}")
    return makers[n](theta)


@dataclass(frozen=True)
class SolutionCloud:
    """Deduplicated oracle solutions on the parameter torus."""

    n: int
    theta: float
    points: np.ndarray
    residuals: np.ndarray
    resolution: int
    dedupe_radius: float
    tol_refined: float = TOL_REFINED
    identified: tuple[tuple[int, int], ...] = field(default=())

    @property
    def grid_spacing(self) -> float:
        return 2 * math.pi / self.resolution

    def __len__(self):
        return len(self.points)


def grid_nodes(dim: int, res: int) -> np.ndarray:
    """Regular torus grid, res nodes per axis at -pi + 2 pi k / res, lexicographic order."""
    axis = -math.pi + 2 * math.pi * np.arange(res) / res
    mesh = np.meshgrid(*([axis] * dim), indexing="ij")
    return np.stack([m.ravel() for m in mesh], axis=-1)


def grid_candidates(sys: ResidualSystem, res: int, threshold: float | None = None) -> np.ndarray:
    """Grid nodes whose residual norm is below ``threshold`` (default 10 grid spacings)."""
    if res < 8:
        raise ValueError("res must be at least 8")
    if threshold is None:
        threshold = 10 * (2 * math.pi / res)
    nodes = grid_nodes(sys.dim, res)
    norms = _blockwise(lambda x: np.linalg.norm(sys.residuals(x), axis=-1), nodes)
    return nodes[norms < threshold]


def _wrap(x: np.ndarray, periodic: np.ndarray) -> np.ndarray:
    return np.where(periodic, wrap_angle(x), x)


def _refine_block(fn, x0: np.ndarray, periodic: np.ndarray, max_iter: int, tol: float):
    x = x0.copy()
    r = fn(x)
    norm = np.linalg.norm(r, axis=-1)
    live = norm >= tol
    dim = x.shape[1]
    eye = np.eye(dim)
    for _ in range(max_iter):
        idx = np.flatnonzero(live)
        if idx.size == 0:
            break
        X, R, N = x[idx], r[idx], norm[idx]
        jac = np.stack([(fn(X + FD_STEP * eye[k]) - R) / FD_STEP for k in range(dim)], axis=-1)
        step = -np.einsum("nij,nj->ni", np.linalg.pinv(jac, rcond=1e-12), R)
        # Step halving until the residual norm drops; rank-deficient Jacobians on
        # solution curves are handled by the minimum-norm pseudo-inverse step.
        alpha = np.ones(idx.size)
        pending = np.ones(idx.size, dtype=bool)
        for _ in range(40):
            p = np.flatnonzero(pending)
            if p.size == 0:
                break
            Y = _wrap(X[p] + alpha[p, None] * step[p], periodic)
            RY = fn(Y)
            NY = np.linalg.norm(RY, axis=-1)
            ok = NY < N[p]
            X[p[ok]], R[p[ok]], N[p[ok]] = Y[ok], RY[ok], NY[ok]
            pending[p[ok]] = False
            alpha[p[~ok]] *= 0.5
        x[idx], r[idx], norm[idx] = X, R, N
        live[idx] = (N >= tol) & ~pending
    return x, norm


def refine_batch(sys: ResidualSystem, starts, max_iter: int = MAX_ITER, tol: float = TOL_REFINED):
    """Refine many starting points at once. Returns (points, residual norms, converged)."""
    starts = np.atleast_2d(np.asarray(starts, dtype=float))
    periodic = np.ones(sys.dim, dtype=bool)
    if len(starts) == 0:
        return starts.copy(), np.zeros(0), np.zeros(0, dtype=bool)
    x, norm = _blockwise(lambda s: _refine_block(sys.residuals, s, periodic, max_iter, tol), starts, block=4096)
    return _wrap(x, periodic), norm, norm < tol


def refine(sys: ResidualSystem, start, max_iter: int = MAX_ITER, tol: float = TOL_REFINED):
    """Refine a single start. Returns the converged point, or None on failure."""
    x, _, ok = refine_batch(sys, np.asarray(start, dtype=float)[None, :], max_iter, tol)
    return x[0] if ok[0] else None


def _lexsort(points: np.ndarray) -> np.ndarray:
    return np.lexsort(points.T[::-1])


def dedupe(points: np.ndarray, radius: float) -> np.ndarray:
    """Indices of a greedy radius-net of ``points`` (torus metric), scanned in lexicographic order."""
    if len(points) == 0:
        return np.zeros(0, dtype=int)
    order = _lexsort(points)
    tree = cKDTree(torus_box(points), boxsize=2 * math.pi)
    removed = np.zeros(len(points), dtype=bool)
    keep = []
    for i in order:
        if removed[i]:
            continue
        keep.append(i)
        removed[tree.query_ball_point(torus_box(points[i]), radius)] = True
    return np.array(keep, dtype=int)


def identify_congruent(sys: ResidualSystem, points: np.ndarray, tol: float = CONGRUENCE_TOL):
    """Pairs of torus points whose polygons are equal up to orientation-preserving isometry.

    The canonical placement is faithful whenever it pins a frame; at degenerate
    angles (theta = 0 collapses the base triangle) distinct torus points can
    represent one configuration.
    """
    if len(points) < 2:
        return ()
    verts = sys.vertices(points)
    iu = np.triu_indices(sys.n, 1)
    dists = np.linalg.norm(verts[:, :, None, :] - verts[:, None, :, :], axis=-1)[:, iu[0], iu[1]]
    pairs = cKDTree(dists).query_pairs(tol, output_type="ndarray")
    out = []
    for i, j in sorted(map(tuple, pairs)):
        if congruence_rmsd(Polygon(verts[i]), Polygon(verts[j])) < tol:
            out.append((int(i), int(j)))
    return tuple(out)


def solve_all(
    sys: ResidualSystem,
    res: int = 48,
    dedupe_radius: float | None = None,
    threshold: float | None = None,
) -> SolutionCloud:
    """All solutions of ``sys`` found from a res^dim grid, deduplicated and sorted."""
    if res < 16:
        raise ValueError("res must be at least 16")
    spacing = 2 * math.pi / res
    if dedupe_radius is None:
        dedupe_radius = 0.5 * spacing
    if dedupe_radius <= 0:
        raise ValueError("dedupe_radius must be positive")
    cand = grid_candidates(sys, res, threshold)
    pts, norms, ok = refine_batch(sys, cand)
    pts, norms = pts[ok], norms[ok]
    keep = dedupe(pts, dedupe_radius)
    pts, norms = pts[keep], norms[keep]
    order = _lexsort(pts)
    pts, norms = pts[order], norms[order]
    return SolutionCloud(
        n=sys.n,
        theta=sys.theta,
        points=pts,
        residuals=norms,
        resolution=res,
        dedupe_radius=dedupe_radius,
        identified=identify_congruent(sys, pts),
    )


def cloud_max_residual(cloud: SolutionCloud) -> float:
    """Largest full residual (all edges and angles) over the built polygons of a cloud."""
    sys = system_for(cloud.n, cloud.theta)
    worst = 0.0
    for p in cloud.points:
        worst = max(worst, residual(sys.polygon(p), cloud.theta).max_residual)
    return worst


def pentagon_theta_roots(n_theta: int = 60, res: int = 24) -> list[float]:
    """Bond angles in (0, pi) admitting an equilateral equiangular pentagon.

    Sweeps theta_k = pi k / (n_theta + 1); in each theta cell the grid candidates
    are refined jointly in (theta, phi2, phi3) and kept only if theta stays in
    the cell. Returns the sorted distinct roots.
    """
    width = math.pi / (n_theta + 1)
    periodic = np.array([False, True, True])

    def fn(x):
        # theta varies per row, so the placement is rebuilt here rather than via pentagon_system.
        th = x[:, 0]
        ct, st = np.cos(th), np.sin(th)
        p2, p3 = x[:, 1], x[:, 2]
        v = np.zeros((len(x), 5, 3))
        v[:, 1, 0] = 1.0
        v[:, 4, 0], v[:, 4, 1] = ct, st
        v[:, 2] = np.stack([1 - ct, st * np.cos(p2), st * np.sin(p2)], axis=-1)
        q = np.stack([1 - ct, st * np.cos(p3), st * np.sin(p3)], axis=-1)
        v[:, 3, 0] = ct * q[:, 0] + st * q[:, 1]
        v[:, 3, 1] = st * q[:, 0] - ct * q[:, 1]
        v[:, 3, 2] = q[:, 2]
        ang = vertex_angles(v)
        edge = np.linalg.norm(v[:, 3] - v[:, 2], axis=-1) - 1.0
        return np.stack([edge, ang[:, 2] - th, ang[:, 3] - th], axis=-1)

    roots: list[float] = []
    for k in range(1, n_theta + 1):
        th_k = k * width
        cand = grid_candidates(pentagon_system(th_k), res)
        if len(cand) == 0:
            continue
        starts = np.column_stack([np.full(len(cand), th_k), cand])
        x, norm = _refine_block(fn, starts, periodic, MAX_ITER, TOL_REFINED)
        good = (norm < TOL_REFINED) & (np.abs(x[:, 0] - th_k) <= width / 2)
        for th in np.sort(x[good, 0]):
            if not roots or abs(th - roots[-1]) > 1e-6:
                roots.append(float(th))
    roots.sort()
    merged: list[float] = []
    for th in roots:
        if not merged or th - merged[-1] > 1e-6:
            merged.append(th)
    return merged


def sweep(n: int, thetas, res: int = 48) -> list[SolutionCloud]:
    """One oracle cloud per bond angle."""
    return [solve_all(system_for(n, th), res) for th in thetas]
