"""Oracle-versus-closed-form comparison used by ``equipoly verify`` and the acceptance suite."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import torus_distance
from .hexagon import (
    PI_3,
    ClassTag,
    admissible_phi1,
    classify,
    deformation_loop,
    named_configurations,
    near_angle,
)
from .oracle import SolutionCloud, solve_all, system_for
from .pi3 import pi3_families
from .small_n import classify_small, fold_angle
from .topology import ComponentKind, ComponentReport, components

LOOP_SAMPLES = 2048

EXPECTED = {
    ClassTag.Empty: {},
    ClassTag.SinglePoint: {ComponentKind.IsolatedPoint: 1},
    ClassTag.TwoPoints: {ComponentKind.IsolatedPoint: 2},
    ClassTag.CircleAndTwoPoints: {ComponentKind.Loop: 1, ComponentKind.IsolatedPoint: 2},
    ClassTag.TwoCirclesAndFourPoints: {ComponentKind.Loop: 2, ComponentKind.IsolatedPoint: 4},
    ClassTag.GraphXAndTwoPoints: {ComponentKind.GraphLike: 1, ComponentKind.IsolatedPoint: 2},
}


def closed_form_samples(n: int, theta, loop_samples: int = LOOP_SAMPLES) -> np.ndarray:
    """Dense sample of the closed-form solution set in the oracle's coordinates."""
    th = float(theta)
    if n == 6:
        if near_angle(th, PI_3):
            return np.array([t.as_array() for _, t in pi3_families(loop_samples // 4)])
        pts = [t.as_array() for _, t in named_configurations(th)]
        arcs = admissible_phi1(th).arcs
        if arcs and any(hi - lo > 1e-9 for lo, hi in arcs):
            for loop_id in range(len(arcs)):
                pts += [t.as_array() for t in deformation_loop(th, loop_id, loop_samples)]
        return np.array(pts).reshape(-1, 3)
    if n == 5:
        if classify_small(5, th).tag is ClassTag.Empty:
            return np.zeros((0, 2))
        return np.zeros((1, 2))
    if n == 4:
        if classify_small(4, th).tag is ClassTag.Empty:
            return np.zeros((0, 1))
        delta = fold_angle(th)
        return np.unique(np.array([[delta], [-delta]]), axis=0)
    raise ValueError(f"no closed forms for n = {n}")


def hausdorff(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """Directed torus distances (sup over a of dist to b, sup over b of dist to a)."""
    if len(a) == 0 and len(b) == 0:
        return 0.0, 0.0
    if len(a) == 0 or len(b) == 0:
        return math.inf, math.inf

    def directed(x, y):
        return max(float(np.min(torus_distance(y, p))) for p in x)

    return directed(a, b), directed(b, a)


def expected_class(n: int, theta):
    return classify(theta) if n == 6 else classify_small(n, theta)


@dataclass
class Verification:
    n: int
    theta: float
    resolution: int
    eps: float
    cloud: SolutionCloud
    report: ComponentReport
    hausdorff_cloud_to_closed: float
    hausdorff_closed_to_cloud: float
    bound: float
    expected: dict

    @property
    def hausdorff(self) -> float:
        return max(self.hausdorff_cloud_to_closed, self.hausdorff_closed_to_cloud)

    @property
    def counts_ok(self) -> bool:
        counts = {k: v for k, v in self.report.counts().items() if v}
        return counts == self.expected

    @property
    def passed(self) -> bool:
        return self.hausdorff < self.bound and self.counts_ok

    def text(self) -> str:
        cls = expected_class(self.n, self.theta)
        lines = [
            f"n = {self.n}",
            f"theta = {self.theta:.12f}",
            f"resolution = {self.resolution}",
            f"eps = {self.eps:.6f}",
            f"class = {cls.tag.value} ({cls.detail})",
            f"oracle points = {len(self.cloud)}",
            f"hausdorff oracle->closed = {self.hausdorff_cloud_to_closed:.6f}",
            f"hausdorff closed->oracle = {self.hausdorff_closed_to_cloud:.6f}",
            f"hausdorff bound = {self.bound:.6f}",
            f"components = {self.report.component_count}: {self.report.summary()}",
        ]
        for c in self.report.components:
            sample = ", ".join(f"{x:.6f}" for x in c.sample)
            lines.append(f"  {c.kind.value}: size {c.size}, diameter {c.diameter:.6f}, sample ({sample})")
        expect = ", ".join(f"{v} {k.value}" for k, v in self.expected.items()) or "none"
        lines.append(f"expected components = {expect}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"


def verify(n: int, theta, res: int = 48, eps: float | None = None) -> Verification:
    th = float(theta)
    spacing = 2 * math.pi / res
    eps = 1.5 * spacing if eps is None else eps
    cloud = solve_all(system_for(n, th), res)
    report = components(cloud, eps)
    ref = closed_form_samples(n, th)
    d_cloud, d_ref = hausdorff(cloud.points, ref)
    return Verification(
        n=n,
        theta=th,
        resolution=res,
        eps=eps,
        cloud=cloud,
        report=report,
        hausdorff_cloud_to_closed=d_cloud,
        hausdorff_closed_to_cloud=d_ref,
        bound=2 * spacing,
        expected=EXPECTED[expected_class(n, th).tag],
    )
