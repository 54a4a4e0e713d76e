"""
Line-Tension Solver Test Suite

Tests:
1. Forward map and the four-equation residual
2. Tangent-plane Hessian against the constrained Lagrangian, classification
3. Multistart Newton: critical points, residuals, scaling invariance
4. Force-balance relations and the necessary-condition lemma
5. Global minimum against the boundary points

Run: pytest test_line_solver.py
"""
import math

import numpy as np
import pytest

from src.errors import InvalidInputError, SingularParameterizationError
from src.geometry import ReducedVolumes, Tensions
from src.solvers import (
    Classification,
    check_point_inequalities,
    classify,
    feasibility_prefilter,
    find_critical_points,
    forward_map,
    global_minimum,
    hessian_tangent,
    lemma_constants,
    relation_checks,
    residual,
    solve_surface,
)

ROOT3 = math.sqrt(3.0)


@pytest.fixture(scope="module")
def line_points():
    return find_critical_points(
        Tensions.of(5.0, 6.0, 4.0, kappa=1.0), ReducedVolumes.of(0.75, 0.25)
    )


# ============================================
# FORWARD MAP AND RESIDUAL
# ============================================


def test_forward_map_recovers_equal_tensions(equal_volumes):
    image = forward_map(-ROOT3, ROOT3, 1.0, 0.0, equal_volumes)
    assert image.t1 == pytest.approx(1.0, rel=1e-12)
    assert image.t2 == pytest.approx(1.0, rel=1e-12)
    assert image.z3 == pytest.approx(0.0, abs=1e-14)
    h = (0.5 / (6.0 * ROOT3)) ** (1.0 / 3.0)
    assert image.y == pytest.approx(1.0 / h, rel=1e-12)


def test_forward_map_inverts_a_line_tension_critical_point(line_points, line_tensions):
    point = next(p for p in line_points if p.is_local_min)
    z1, z2, z3 = point.state.z
    image = forward_map(z1, z2, line_tensions.t3, line_tensions.kappa, ReducedVolumes.of(0.75, 0.25))
    assert (image.t1, image.t2) == pytest.approx((5.0, 6.0), rel=1e-8)
    assert image.z3 == pytest.approx(z3, rel=1e-9, abs=1e-12)
    assert image.y == pytest.approx(point.state.y, rel=1e-9)


def test_forward_map_rejects_bad_apexes(equal_volumes):
    with pytest.raises(InvalidInputError):
        forward_map(0.5, 1.0, 1.0, 0.1, equal_volumes)


def test_forward_map_is_singular_on_the_diagonal(equal_volumes):
    # alpha2 - alpha1 = pi: caps 1 and 2 are tangent, sin(phi3) = 0
    with pytest.raises(SingularParameterizationError):
        forward_map(-1.0, 1.0, 1.0, 0.1, equal_volumes)


def test_residual_vanishes_at_the_symmetric_doublet(equal_tensions, equal_volumes):
    state = solve_surface(equal_tensions, equal_volumes).state
    assert max(abs(r) for r in residual(*state.z, state.y, equal_tensions, equal_volumes)) <= 1e-12


def test_residual_needs_positive_y(equal_tensions, equal_volumes):
    with pytest.raises(InvalidInputError):
        residual(-1.0, 1.0, 0.0, 0.0, equal_tensions, equal_volumes)


# ============================================
# HESSIAN AND CLASSIFICATION
# ============================================


@pytest.mark.parametrize(
    "trace, det, expected",
    [
        (1.0, 1.0, Classification.LOCAL_MIN),
        (-1.0, 1.0, Classification.LOCAL_MAX),
        (1.0, -1.0, Classification.SADDLE),
        (1.0, 0.0, Classification.DEGENERATE),
        (26.158972256436426, 4.615158111925040, Classification.LOCAL_MIN),
    ],
)
def test_classify(trace, det, expected):
    assert classify(trace, det) is expected


def test_degenerate_band_scales_with_tension():
    # 1e-9 (2 pi t_s)^2 with t_s = 100 is ~ 3.9e-4
    assert classify(1.0, 1e-4, ts=100.0) is Classification.DEGENERATE
    assert classify(1.0, 1e-3, ts=100.0) is Classification.LOCAL_MIN


def test_hessian_of_surface_minimizer(equal_tensions, equal_volumes):
    state = solve_surface(equal_tensions, equal_volumes).state
    trace, det = hessian_tangent(state, equal_tensions)
    assert trace == pytest.approx(12.0 * math.pi)
    assert classify(trace, det, equal_tensions.ts) is Classification.LOCAL_MIN


def _lagrangian_on_tangent_plane(state, tensions) -> np.ndarray:
    """
    Hessian of E - P1 V1 - P2 V2 in (x1, x2, x3, h), restricted to the basis
    U = (1 + c_k, 0), W = (-s_k, 1). Pressures come from the x1 and x2
    stationarity conditions, not from the solver.
    """
    x1, x2, x3 = state.x
    h = state.h
    t1, t2, t3 = tensions.surface
    P1 = -4.0 * t1 * x1 / (h * h + x1 * x1)
    P2 = 4.0 * t2 * x2 / (h * h + x2 * x2)
    pi = math.pi
    hess_e = 2.0 * pi * np.diag([t1, t2, t3, tensions.ts])
    hess_v1 = pi * np.array(
        [
            [-x1, 0.0, 0.0, -h],
            [0.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, x3, h],
            [-h, 0.0, h, x3 - x1],
        ]
    )
    hess_v2 = pi * np.array(
        [
            [0.0, 0.0, 0.0, 0.0],
            [0.0, x2, 0.0, h],
            [0.0, 0.0, -x3, -h],
            [0.0, h, -h, x2 - x3],
        ]
    )
    full = hess_e - P1 * hess_v1 - P2 * hess_v2
    c, s = state.c, state.s
    basis = np.array([[1.0 + c[0], 1.0 + c[1], 1.0 + c[2], 0.0], [-s[0], -s[1], -s[2], 1.0]]).T
    return basis.T @ full @ basis


@pytest.mark.parametrize("kappa_case", ["surface", "line"])
def test_hessian_matches_lagrangian_assembly(kappa_case, line_points, line_tensions):
    if kappa_case == "surface":
        tensions = Tensions.of(3.0, 4.0, 5.0)
        state = solve_surface(tensions, ReducedVolumes.of(0.75, 0.25)).state
    else:
        tensions = line_tensions
        state = next(p for p in line_points if p.is_local_min).state
    reduced = _lagrangian_on_tangent_plane(state, tensions)
    trace, det = hessian_tangent(state, tensions)
    scale = 2.0 * math.pi * tensions.ts
    assert reduced[0, 1] == pytest.approx(reduced[1, 0], abs=1e-12 * scale)
    assert np.trace(reduced) == pytest.approx(trace, rel=1e-10, abs=1e-10 * scale)
    assert np.linalg.det(reduced) == pytest.approx(det, rel=1e-8, abs=1e-10 * scale**2)


def test_line_tension_lowers_the_trace(equal_tensions, equal_volumes):
    state = solve_surface(equal_tensions, equal_volumes).state
    trace0, _ = hessian_tangent(state, equal_tensions)
    trace1, _ = hessian_tangent(state, Tensions.of(1, 1, 1, kappa=0.2))
    assert trace0 - trace1 == pytest.approx(2.0 * math.pi * 3.0 * 0.2 * state.y)


# ============================================
# MULTISTART NEWTON
# ============================================


def test_line_configuration_has_exactly_one_local_min(line_points):
    assert 1 <= len(line_points) <= 6
    assert sum(p.is_local_min for p in line_points) == 1
    assert all(p.residual <= 1e-10 for p in line_points)
    energies = [p.energy for p in line_points]
    assert energies == sorted(energies)


def test_critical_points_are_distinct(line_points):
    for i, a in enumerate(line_points):
        for b in line_points[i + 1:]:
            assert max(abs(u - v) for u, v in zip(a.state.z, b.state.z)) > 1e-6 or abs(
                a.state.y - b.state.y
            ) > 1e-6


def test_small_line_tension_perturbs_surface_minimizer(right_angle_tensions, unequal_volumes):
    surface = solve_surface(right_angle_tensions, unequal_volumes).state
    perturbed = Tensions.of(3.0, 4.0, 5.0, kappa=1e-6)
    minima = [p for p in find_critical_points(perturbed, unequal_volumes) if p.is_local_min]
    assert minima
    closest = min(minima, key=lambda p: abs(p.state.h - surface.h))
    assert closest.state.x == pytest.approx(surface.x, abs=1e-3)
    assert closest.state.h == pytest.approx(surface.h, rel=1e-3)


def test_scaling_all_tensions_keeps_the_geometry(line_points, unequal_volumes):
    scaled = find_critical_points(Tensions.of(15.0, 18.0, 12.0, kappa=3.0), unequal_volumes)
    a = next(p for p in line_points if p.is_local_min)
    b = next(p for p in scaled if p.is_local_min)
    assert b.state.x == pytest.approx(a.state.x, abs=1e-9)
    assert b.state.h == pytest.approx(a.state.h, rel=1e-9)
    assert b.energy == pytest.approx(3.0 * a.energy, rel=1e-9)


def test_joint_rescaling_keeps_the_reduced_geometry(line_points, unequal_volumes):
    # t -> lam t, w -> mu^3 w, kappa -> lam mu kappa leaves (tau, w) and so (z, rho) fixed
    lam, mu = 3.0, 2.0
    scaled = find_critical_points(
        Tensions.of(5.0 * lam, 6.0 * lam, 4.0 * lam, kappa=lam * mu),
        unequal_volumes.scaled(mu**3),
    )
    a = next(p for p in line_points if p.is_local_min)
    b = next(p for p in scaled if p.is_local_min)
    assert b.state.z == pytest.approx(a.state.z, abs=1e-9)
    assert b.state.h == pytest.approx(mu * a.state.h, rel=1e-9)
    assert b.energy == pytest.approx(lam * mu**2 * a.energy, rel=1e-9)
    assert len(scaled) == len(line_points)


def test_grid_must_have_two_starts(line_tensions, unequal_volumes):
    with pytest.raises(InvalidInputError):
        find_critical_points(line_tensions, unequal_volumes, grid=1)


# ============================================
# RELATIONS AND NECESSARY CONDITIONS
# ============================================


def test_force_balance_relations_hold(line_points, line_tensions):
    for point in line_points:
        report = relation_checks(point.state, line_tensions)
        assert report.max_abs <= 1e-9
        assert report.holds()


def test_relations_fail_away_from_a_critical_point(equal_tensions, equal_volumes):
    state = solve_surface(equal_tensions, equal_volumes).state
    off = Tensions.of(1.0, 1.2, 1.0)
    report = relation_checks(state, off)
    assert not report.holds()
    assert report.holds(tolerance=1.0)


def test_relations_hold_without_line_tension(right_angle_tensions, unequal_volumes):
    state = solve_surface(right_angle_tensions, unequal_volumes).state
    assert relation_checks(state, right_angle_tensions).max_abs <= 1e-9


def test_critical_points_satisfy_point_inequalities(line_points, line_tensions):
    volumes = ReducedVolumes.of(0.75, 0.25)
    for point in line_points:
        assert check_point_inequalities(point.state, line_tensions, volumes).satisfied(1e-9)


def test_feasibility_report(line_tensions, unequal_volumes):
    report = feasibility_prefilter(line_tensions, unequal_volumes)
    assert report.u == pytest.approx(15.0 * (0.5) ** (1.0 / 3.0))
    assert report.u_at_least_three and report.sharp_feasible
    assert report.feasible
    assert report.y_min == pytest.approx(4.0 ** (1.0 / 3.0))


def test_feasibility_example_value():
    report = feasibility_prefilter(Tensions.of(1, 1, 1, 0.1), ReducedVolumes.of(0.5, 0.5))
    assert report.u == pytest.approx(30.0 * 0.5 ** (1.0 / 3.0))


def test_feasibility_without_line_tension(equal_tensions, equal_volumes):
    report = feasibility_prefilter(equal_tensions, equal_volumes)
    assert report.u is None
    assert report.feasible


def test_large_line_tension_fails_u_bound(equal_volumes):
    report = feasibility_prefilter(Tensions.of(1, 1, 1, kappa=5.0), equal_volumes)
    assert report.u < 3.0
    assert not report.feasible


def test_dominant_tension_check_is_reported(equal_volumes):
    report = feasibility_prefilter(Tensions.of(3, 1, 1, kappa=0.1), equal_volumes)
    assert [c.k for c in report.dominant] == [1]


def test_lemma_constants():
    constants = lemma_constants()
    assert constants.omega0 == pytest.approx(2.1413665, abs=1e-7)
    assert constants.M == pytest.approx(0.321707, abs=1e-6)
    assert constants.M_numeric == pytest.approx(constants.M, abs=1e-10)
    assert constants.omega0_numeric == pytest.approx(constants.omega0, abs=1e-7)
    assert 1.0 / constants.M > 3.0


# ============================================
# GLOBAL MINIMUM
# ============================================


def test_global_minimum_without_line_tension(equal_tensions, equal_volumes):
    result = global_minimum(equal_tensions, equal_volumes)
    assert result.global_tag == "interior"
    assert result.global_energy == pytest.approx(
        solve_surface(equal_tensions, equal_volumes).energy
    )
    assert [b.which for b in result.boundaries] == [1, 2, 3]


def test_global_minimum_in_degenerate_regime(unequal_volumes):
    result = global_minimum(Tensions.of(1, 1, 3), unequal_volumes)
    assert result.critical_points == []
    assert result.global_tag == "u3"
    assert result.minimizer.which == 3


def test_strong_line_tension_leaves_no_local_min(equal_volumes):
    result = global_minimum(Tensions.of(1, 1, 1, kappa=10.0), equal_volumes)
    assert result.local_minima == []
    assert result.global_tag in ("u1", "u2", "u3")


def test_global_energy_is_the_lowest_candidate(line_tensions, unequal_volumes):
    result = global_minimum(line_tensions, unequal_volumes)
    candidates = [b.energy for b in result.boundaries] + [
        p.energy for p in result.local_minima
    ]
    assert result.global_energy == min(candidates)
