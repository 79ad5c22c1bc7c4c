import math

import numpy as np
import pytest
from conftest import random_rotation
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from equipoly.geometry import (
    BondAngle,
    DegenerateEdgeError,
    Polygon,
    bond_angles,
    congruence_rmsd,
    congruent,
    edge_lengths,
    mirror_z,
    residual,
    rigid_motion,
    torus_distance,
    vertex_angles,
    wrap_angle,
)
from equipoly.hexagon import build_hexagon


def regular_polygon(n):
    k = np.arange(n)
    r = 0.5 / math.sin(math.pi / n)
    return Polygon(np.stack([r * np.cos(2 * np.pi * k / n), r * np.sin(2 * np.pi * k / n), np.zeros(n)], axis=1))


def test_bond_angle_half_angles():
    b = BondAngle(math.pi / 2)
    assert math.isclose(b.C, math.sqrt(0.5))
    assert math.isclose(b.S, math.sqrt(0.5))
    assert BondAngle.coerce(b) is b
    for bad in (float("nan"), -0.1, math.pi, 4.0):
        with pytest.raises(ValueError):
            BondAngle(bad)


def test_wrap_angle():
    assert wrap_angle(math.pi) == math.pi
    assert wrap_angle(-math.pi) == math.pi
    assert math.isclose(wrap_angle(3 * math.pi / 2), -math.pi / 2)
    assert_allclose(wrap_angle([0.0, 2 * math.pi, -3.0]), [0.0, 0.0, -3.0], atol=1e-15)


def test_polygon_is_read_only_and_cyclic():
    p = regular_polygon(5)
    assert p.n == 5
    assert_allclose(p[5], p[0])
    with pytest.raises(ValueError):
        p.vertices[0, 0] = 1.0
    with pytest.raises(ValueError):
        Polygon([[0, 0, 0], [1, 0, 0]])
    assert p == Polygon(p.vertices.copy())
    assert hash(p) == hash(Polygon(p.vertices.copy()))


@pytest.mark.parametrize("n", [3, 4, 5, 6, 8])
def test_regular_polygon_angles(n):
    p = regular_polygon(n)
    assert_allclose(edge_lengths(p), 1.0, atol=1e-14)
    assert_allclose(bond_angles(p), math.pi - 2 * math.pi / n, atol=1e-14)
    assert residual(p, math.pi - 2 * math.pi / n).max_residual < 1e-14


def test_vertex_angles_batched():
    v = np.stack([regular_polygon(6).vertices, regular_polygon(6).vertices * 2])
    assert vertex_angles(v).shape == (2, 6)
    assert_allclose(vertex_angles(v), 2 * math.pi / 3)


def test_degenerate_edge_raises():
    with pytest.raises(DegenerateEdgeError):
        bond_angles(Polygon([[0, 0, 0], [0, 0, 0], [1, 0, 0]]))


def test_residual_report_splits_edges_and_angles():
    p = Polygon(regular_polygon(4).vertices * 2)
    rep = residual(p, math.pi / 2)
    assert_allclose(rep.edge_residuals, 1.0)
    assert_allclose(rep.angle_residuals, 0.0, atol=1e-14)
    assert rep.max_residual == pytest.approx(1.0)


def test_congruence(rng):
    p = build_hexagon(math.pi / 2, (0.3, -1.0, 2.0))
    q = rigid_motion(p, random_rotation(rng), (1.0, -2.0, 0.5))
    assert congruence_rmsd(p, q) < 1e-12
    assert congruent(p, q)
    # A reflection is not a proper motion for a chiral polygon.
    assert not congruent(p, mirror_z(p))


def test_torus_distance_wraps():
    assert torus_distance(np.array([3.1, 0.0]), np.array([-3.1, 0.0])) == pytest.approx(2 * math.pi - 6.2)
    d = torus_distance(np.zeros((4, 3)), np.full(3, math.pi))
    assert_allclose(d, math.sqrt(3) * math.pi)


phis = st.floats(-math.pi, math.pi, allow_nan=False)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.1, 2.0), phis, phis, phis, st.integers(0, 2**32 - 1))
def test_residual_invariant_under_rigid_motion_and_mirror(theta, a, b, c, seed):
    p = build_hexagon(theta, (a, b, c))
    rot = random_rotation(np.random.default_rng(seed))
    base = bond_angles(p)
    assert_allclose(bond_angles(rigid_motion(p, rot, (3.0, 1.0, -2.0))), base, atol=1e-9)
    assert_allclose(bond_angles(mirror_z(p)), base, atol=1e-12)
    assert_allclose(edge_lengths(mirror_z(p)), edge_lengths(p), atol=1e-12)
