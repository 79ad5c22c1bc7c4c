import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from equipoly.geometry import Polygon, bond_angles, congruent, edge_lengths, mirror_z, residual, torus_distance
from equipoly.hexagon import (
    PI_3,
    TWO_PI_3,
    ClassTag,
    FamilyKind,
    TorusPoint,
    admissible_phi1,
    angle_condition_residual,
    boat,
    build_hexagon,
    chair,
    classify,
    coefficients,
    crown_companion,
    deformation_loop,
    disc_factored,
    expanded_p3_p5,
    hexagon_vertices,
    inward_crown,
    isolated_configurations,
    named_configurations,
    solve_branch,
    sum_of_squares_inline,
)

TETRA = math.acos(-1 / 3)


def test_odd_vertices_always_satisfy_constraints(rng):
    phis = rng.uniform(-math.pi, math.pi, size=(50, 3))
    for theta in (0.3, PI_3, 1.9):
        verts = hexagon_vertices(theta, phis)
        for v in verts:
            p = Polygon(v)
            assert_allclose(edge_lengths(p), 1.0, atol=1e-13)
            assert_allclose(bond_angles(p)[1::2], theta, atol=1e-12)


def test_angle_condition_matches_geometry(rng):
    theta = 1.2
    for a, b, c in rng.uniform(-math.pi, math.pi, size=(20, 3)):
        angles = bond_angles(build_hexagon(theta, (a, b, c)))
        # The residual is an affine function of cos(angle at P2), vanishing at theta.
        r = angle_condition_residual(theta, a, b)
        assert (r > 0) == (math.cos(angles[2]) < math.cos(theta)) or abs(r) < 1e-12


def test_angle_condition_zero_set_is_vertex_angle():
    theta = 1.2
    t = solve_branch(theta, 1.0, 1)
    angles = bond_angles(build_hexagon(theta, t))
    assert_allclose(angles, theta, atol=1e-12)
    assert abs(angle_condition_residual(theta, t.phi1, t.phi3)) < 1e-12
    assert abs(angle_condition_residual(theta, t.phi3, t.phi5)) < 1e-12
    assert abs(angle_condition_residual(theta, t.phi5, t.phi1)) < 1e-12


def test_coefficients_at_right_angle():
    c = coefficients(math.pi / 2, 0.0)
    assert c.a == pytest.approx(1.36603, abs=1e-5)
    assert c.b == pytest.approx(0.0, abs=1e-15)
    assert c.d == pytest.approx(-0.36603, abs=1e-5)
    assert c.disc == pytest.approx(1.73205, abs=1e-5)
    assert c.disc_factored == pytest.approx(c.disc, abs=1e-12)
    assert not c.degenerate
    assert coefficients(PI_3, math.pi).degenerate


def test_inline_sum_of_squares_misses_c_squared(rng):
    for theta, phi1 in rng.uniform([0.1, -math.pi], [2.0, math.pi], size=(30, 2)):
        c = coefficients(theta, phi1)
        C2 = math.cos(theta / 2) ** 2
        assert c.a**2 + c.b**2 == pytest.approx(C2 * sum_of_squares_inline(theta, phi1), rel=1e-12)


def test_solve_branch_values():
    t = solve_branch(math.pi / 2, 0.0, 1)
    # b = 0 here, so cos(phi3) = d / a = (1 - sqrt3) / (1 + sqrt3).
    phi3 = math.acos((1 - math.sqrt(3)) / (1 + math.sqrt(3)))
    assert phi3 == pytest.approx(1.84206, abs=1e-5)
    assert_allclose(tuple(t), (0.0, -phi3, phi3), atol=1e-12)
    assert residual(build_hexagon(math.pi / 2, t), math.pi / 2).max_residual < 1e-12
    with pytest.raises(ValueError):
        solve_branch(math.pi / 2, 3.0, 1)
    with pytest.raises(ValueError):
        solve_branch(PI_3, math.pi, 1)
    with pytest.raises(ValueError):
        solve_branch(1.0, 0.0, 0)


def test_branches_are_mirror_related():
    theta, phi1 = 1.4, 0.7
    plus, minus = solve_branch(theta, phi1, 1), solve_branch(theta, -phi1, -1)
    assert plus.negated().distance(minus) < 1e-12
    assert congruent(mirror_z(build_hexagon(theta, plus)), build_hexagon(theta, minus))


def test_expanded_formulas_match_branch_solution():
    for theta in (0.5, 1.2, 1.9):
        arcs = admissible_phi1(theta).arcs
        lo, hi = arcs[-1]
        for phi1 in np.linspace(lo, hi, 7)[1:-1]:
            for branch in (1, -1):
                p = build_hexagon(theta, solve_branch(theta, phi1, branch))
                p3, p5 = expanded_p3_p5(theta, phi1, branch)
                assert_allclose(p3, p[3], atol=1e-9)
                assert_allclose(p5, p[5], atol=1e-9)


def test_admissible_sets():
    (arc,) = admissible_phi1(math.pi / 2).arcs
    assert_allclose(arc, (-2.18628, 2.18628), atol=1e-5)
    lo_arc, hi_arc = admissible_phi1(math.pi / 4).arcs
    # cos(phi1) in [(3 - 8C^2) S / (sqrt3 C), sqrt3 S / C]
    upper = math.sqrt(3) * math.tan(math.pi / 8)
    assert_allclose(hi_arc, (0.77068, 2.72768), atol=1e-5)
    assert hi_arc[0] == pytest.approx(math.acos(upper), abs=1e-14)
    assert_allclose(lo_arc, (-hi_arc[1], -hi_arc[0]))
    assert admissible_phi1(PI_3).arcs == ((-math.pi, math.pi),)
    assert_allclose(admissible_phi1(TWO_PI_3).arcs, ((0.0, 0.0),), atol=1e-7)
    assert admissible_phi1(2.5).empty
    assert 1.0 in admissible_phi1(math.pi / 2)
    assert 2.5 not in admissible_phi1(math.pi / 2)


def test_disc_sign_matches_admissibility(rng):
    for theta in (0.4, 0.9, 1.3, 1.8):
        adm = admissible_phi1(theta)
        for phi1 in rng.uniform(-math.pi, math.pi, 40):
            assert (disc_factored(theta, phi1) >= -1e-12) == (phi1 in adm)


@pytest.mark.parametrize("theta", [0.3, 0.8, PI_3, 1.3, math.pi / 2, 1.9, TWO_PI_3])
def test_named_configurations_are_solutions(theta):
    for fam, t in named_configurations(theta):
        assert residual(build_hexagon(theta, t), theta).max_residual < 1e-10, fam


def test_chair_at_tetrahedral_angle():
    t, p = chair(TETRA)
    assert_allclose(tuple(t), [math.acos(math.tan(TETRA / 2) / math.sqrt(3))] * 3, atol=1e-14)
    # Odd vertices all sit at height 1/3 of the edge-length scale.
    assert_allclose(p.vertices[1::2, 2], 1 / 3, atol=1e-12)
    assert_allclose(p.vertices[::2, 2], 0.0)


def test_boat_values():
    t, _ = boat(math.pi / 2)
    assert_allclose(tuple(t), (-2.18628, 0.95532, 0.95532), atol=1e-5)
    t, _ = boat(TETRA)
    assert math.cos(t.phi1) == pytest.approx(0.27217, abs=1e-5)
    tm, _ = boat(math.pi / 2, -1)
    assert tm.distance(boat(math.pi / 2)[0].negated()) < 1e-12


def test_boat_is_endpoint_of_admissible_arc():
    for theta in (0.5, 1.3, 1.8):
        t, _ = boat(theta)
        lo, hi = admissible_phi1(theta).arcs[-1]
        assert min(abs(abs(t.phi1) - hi), abs(abs(t.phi1) - lo)) < 1e-9
        assert abs(coefficients(theta, t.phi1).disc) < 1e-9


def test_inward_crown():
    t, p = inward_crown(math.pi / 4)
    assert_allclose(tuple(t), [math.acos(-math.sqrt(3) * math.tan(math.pi / 8))] * 3, atol=1e-14)
    assert t.phi1 == pytest.approx(2.37092, abs=1e-5)
    assert residual(p, math.pi / 4).max_residual < 1e-12
    with pytest.raises(ValueError):
        inward_crown(1.2)
    tc, pc = crown_companion(math.pi / 4)
    assert residual(pc, math.pi / 4).max_residual < 1e-12
    assert tc.phi3 == pytest.approx(math.pi - tc.phi1)
    assert_allclose(pc[3], p[3], atol=1e-12)
    assert_allclose(pc[5], p[5], atol=1e-12)


def test_classify_regimes():
    assert classify(0.0).tag is ClassTag.SinglePoint
    assert classify(0.5).tag is ClassTag.TwoCirclesAndFourPoints
    assert classify(PI_3).tag is ClassTag.GraphXAndTwoPoints
    assert classify(1.5).tag is ClassTag.CircleAndTwoPoints
    assert classify(TWO_PI_3).tag is ClassTag.SinglePoint
    assert classify(2.2).tag is ClassTag.Empty


def test_isolated_configurations():
    kinds = sorted(f.kind.value for f, _ in isolated_configurations(math.pi / 4))
    assert kinds == ["Chair", "Chair", "InwardCrown", "InwardCrown"]
    assert [f.kind for f, _ in isolated_configurations(PI_3)] == [FamilyKind.Chair] * 2
    assert [f.kind for f, _ in isolated_configurations(TWO_PI_3)] == [FamilyKind.RegularHexagon]


def test_extreme_named_configurations():
    p = build_hexagon(TWO_PI_3, named_configurations(TWO_PI_3)[0][1])
    assert_allclose(p.vertices[:, 2], 0.0, atol=1e-15)
    t0 = [t for _, t in named_configurations(0.0)]
    assert len(t0) == 2
    for t in t0:
        v = build_hexagon(0.0, t).vertices
        # Every vertex sits on one of two points a unit apart.
        assert residual(build_hexagon(0.0, t), 0.0).max_residual < 1e-12
        assert np.unique(np.round(v, 9), axis=0).shape[0] == 2


@pytest.mark.parametrize("theta,loop_id", [(math.pi / 2, 0), (1.9, 0), (math.pi / 4, 0), (math.pi / 4, 1), (1.0, 0)])
def test_deformation_loop(theta, loop_id):
    steps = 128
    loop = deformation_loop(theta, loop_id, steps)
    assert len(loop) == steps
    assert loop[0] == loop[-1]
    pts = np.array([t.as_array() for t in loop])

    gaps = torus_distance(pts[1:], pts[:-1])
    assert gaps.max() < 8 * math.pi / steps
    for t in loop[::8]:
        assert residual(build_hexagon(theta, t), theta).max_residual < 1e-8
    b_plus, b_minus = boat(theta, 1)[0], boat(theta, -1)[0]
    target = b_plus if loop_id == 0 else b_minus
    assert min(target.distance(t) for t in loop) < 8 * math.pi / steps


def test_deformation_loop_rejects_bad_regimes():
    for theta in (0.0, PI_3, TWO_PI_3, 2.5):
        with pytest.raises(ValueError):
            deformation_loop(theta)
    with pytest.raises(ValueError):
        deformation_loop(math.pi / 2, 1)
    with pytest.raises(ValueError):
        deformation_loop(math.pi / 2, 0, steps=4)


def test_torus_point_wraps():
    t = TorusPoint(3 * math.pi, -math.pi, 0.5)
    assert t.phi1 == pytest.approx(math.pi)
    assert t.phi3 == math.pi
    with pytest.raises(ValueError):
        TorusPoint(float("inf"), 0, 0)


def test_chair_strictly_inside_admissible_arc():
    for theta in np.linspace(PI_3 + 0.01, TWO_PI_3 - 0.01, 15):
        t, _ = chair(theta)
        ((lo, hi),) = admissible_phi1(theta).arcs
        assert lo < t.phi1 < hi
        assert coefficients(theta, t.phi1).disc > 0


def test_crown_degenerates_at_pi_over_3():
    t, p = inward_crown(PI_3)
    assert_allclose(tuple(t), [math.pi] * 3)
    # Doubly covered triangle: every odd vertex lands in the base plane.
    assert_allclose(p.vertices[:, 2], 0.0, atol=1e-7)


def test_named_mirror_pairs():
    theta = math.pi / 4
    for make in (chair, boat, inward_crown):
        tp, pp = make(theta, 1)
        tm, pm = make(theta, -1)
        assert tp.negated().distance(tm) < 1e-12
        assert_allclose(mirror_z(pp).vertices, pm.vertices, atol=1e-12)
