import math

import numpy as np
import pytest

from equipoly.hexagon import boat, chair, deformation_loop, inward_crown
from equipoly.oracle import SolutionCloud
from equipoly.topology import (
    ComponentKind,
    components,
    isolation_radius,
    local_branches,
    path_connected,
    representatives,
    trace_loop,
)

RES = 48
H = 2 * math.pi / RES
EPS = 1.5 * H


def make_cloud(points, identified=()):
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    return SolutionCloud(6, 1.0, pts, np.zeros(len(pts)), RES, 0.5 * H, identified=identified)


def circle(center, radius, n, plane=(0, 1)):
    t = np.linspace(0, 2 * np.pi, n, endpoint=False)
    pts = np.tile(np.asarray(center, dtype=float), (n, 1))
    pts[:, plane[0]] += radius * np.cos(t)
    pts[:, plane[1]] += radius * np.sin(t)
    return pts


def test_isolated_points_and_loop():
    pts = np.vstack([circle((0, 0, 0), 1.0, 120), [[2.5, 2.5, 2.5]], [[-2.5, -2.5, -2.5]]])
    rep = components(make_cloud(pts), EPS)
    counts = rep.counts()
    assert counts[ComponentKind.Loop] == 1
    assert counts[ComponentKind.IsolatedPoint] == 2
    assert rep.summary() == "1 Loop, 2 IsolatedPoint, 0 GraphLike"


def test_figure_eight_is_graph_like():
    a = circle((0, 0, 0), 1.0, 120)
    b = circle((2.0, 0, 0), 1.0, 120)
    rep = components(make_cloud(np.vstack([a, b])), EPS)
    assert rep.component_count == 1
    assert rep.components[0].kind is ComponentKind.GraphLike


def test_open_arc_is_graph_like():
    arc = circle((0, 0, 0), 1.0, 120)[:80]
    rep = components(make_cloud(arc), EPS)
    assert rep.components[0].kind is ComponentKind.GraphLike


def test_local_branches():
    pts = circle((0, 0, 0), 1.0, 120)
    assert all(local_branches(pts, i, EPS) == 2 for i in range(0, 120, 10))
    assert local_branches(pts[:80], 0, EPS) == 1


def test_loop_wrapping_the_torus():
    t = np.linspace(-math.pi, math.pi, 100, endpoint=False)
    pts = np.stack([t, np.zeros_like(t), np.zeros_like(t)], axis=1)
    rep = components(make_cloud(pts), EPS)
    assert rep.component_count == 1
    assert rep.components[0].kind is ComponentKind.Loop


def test_identified_points_merge():
    cloud = make_cloud([[1.0, 1.0, 1.0], [-1.0, -1.0, -1.0]], identified=((0, 1),))
    assert list(representatives(cloud)) == [0, 0]
    rep = components(cloud, EPS)
    assert rep.component_count == 1
    assert rep.components[0].members == (0, 1)


def test_empty_cloud():
    rep = components(make_cloud(np.zeros((0, 3))), EPS)
    assert rep.component_count == 0


def test_component_order_is_independent_of_input_order(rng):
    pts = np.vstack([circle((0, 0, 0), 1.0, 120), [[2.5, 2.5, 2.5]], [[-2.5, -2.5, -2.5]]])
    a = components(make_cloud(pts), EPS)
    b = components(make_cloud(pts[rng.permutation(len(pts))]), EPS)
    assert [(c.kind, c.size) for c in a.components] == [(c.kind, c.size) for c in b.components]


def test_trace_loop():
    pts = circle((0, 0, 0), 1.0, 120)
    assert trace_loop(pts, EPS)
    assert not trace_loop(pts[:80], EPS)
    assert not trace_loop(pts[:2], EPS)
    loop = np.array([t.as_array() for t in deformation_loop(math.pi / 2, 0, 256)[:-1]])
    assert trace_loop(loop, EPS)


def test_path_queries_on_oracle_cloud(cloud_cache):
    theta = math.pi / 2
    cloud = cloud_cache(theta)
    b, bm, c = boat(theta)[0], boat(theta, -1)[0], chair(theta)[0]
    assert path_connected(cloud, b, bm, EPS)
    assert not path_connected(cloud, b, c, EPS)
    assert isolation_radius(cloud, c) > 0.2
    assert isolation_radius(cloud, b) < 2 * H
    with pytest.raises(ValueError):
        path_connected(cloud, (0.0, 0.0, 0.0), b, EPS)


def test_crown_isolation_and_loop_closure(cloud_cache):
    theta = math.pi / 4
    cloud = cloud_cache(theta)
    assert isolation_radius(cloud, inward_crown(theta)[0]) > 0.2
    assert isolation_radius(cloud, inward_crown(theta, -1)[0]) > 0.2
    rep = components(cloud, EPS)
    loops = [c for c in rep.components if c.kind is ComponentKind.Loop]
    assert len(loops) == 2
    for c in loops:
        assert trace_loop(cloud.points[list(c.members)], EPS)


def test_isolation_radius_rejects_far_points(cloud_cache):
    with pytest.raises(ValueError):
        isolation_radius(cloud_cache(math.pi / 2), (0.0, 0.0, 0.0))
