"""
Tension Inference Test Suite

Tests:
1. The five angle laws (no line tension)
2. Inference from a solved state
3. The radius law, including a flat interface
4. The (lambda, mu) ambiguity family with line tension, re-solved at a member

Run: pytest test_inference.py
"""
import math

import pytest

from src.errors import InvalidInputError
from src.geometry import ReducedVolumes, Tensions, state_from_xh
from src.inference import (
    ANGLE_LAWS,
    ambiguity_family,
    infer_from_angles,
    infer_from_radii,
    infer_from_state,
)
from src.solvers import Classification, find_critical_points, solve_surface

RIGHT_ANGLES = (math.acos(-0.8), math.acos(-0.6), 0.5 * math.pi)


@pytest.fixture(scope="module")
def line_local_min():
    tensions = Tensions.of(5.0, 6.0, 4.0, kappa=1.0)
    points = find_critical_points(tensions, ReducedVolumes.of(0.75, 0.25))
    return next(p for p in points if p.is_local_min)


@pytest.fixture(scope="module")
def family(line_local_min):
    return ambiguity_family(line_local_min, Tensions.of(5.0, 6.0, 4.0, kappa=1.0))


# ============================================
# ANGLE LAWS
# ============================================


@pytest.mark.parametrize("law", ANGLE_LAWS)
def test_equal_angles_give_equal_tensions(law):
    result = infer_from_angles(*(2.0 * math.pi / 3.0,) * 3, law=law)
    assert result.tensions == pytest.approx((1 / 3, 1 / 3, 1 / 3), rel=1e-12)
    assert result.normalization == "sum"


@pytest.mark.parametrize("law", ANGLE_LAWS)
def test_every_law_recovers_the_right_triangle(law):
    result = infer_from_angles(*RIGHT_ANGLES, law=law)
    assert result.tensions == pytest.approx((3 / 12, 4 / 12, 5 / 12), rel=1e-12)
    assert result.law == law
    assert result.conditioning == pytest.approx(0.6)


@pytest.mark.parametrize(
    "phi_deg",
    [
        (190.0, 90.0, 80.0),  # bulged junction
        (120.0, 120.0, 119.0),  # does not close
        (0.0, 180.0, 180.0),
    ],
)
def test_invalid_angles_are_rejected(phi_deg):
    with pytest.raises(InvalidInputError):
        infer_from_angles(*(math.radians(p) for p in phi_deg))


def test_unknown_law_is_rejected():
    with pytest.raises(InvalidInputError):
        infer_from_angles(*RIGHT_ANGLES, law="tangent")


def test_inference_from_solved_state(right_angle_tensions, unequal_volumes):
    state = solve_surface(right_angle_tensions, unequal_volumes).state
    for law in ANGLE_LAWS:
        result = infer_from_state(state, law)
        assert result.tensions == pytest.approx((3 / 12, 4 / 12, 5 / 12), rel=1e-9)


# ============================================
# RADIUS LAW
# ============================================


def test_radius_law_recovers_tension_ratios(right_angle_tensions, unequal_volumes):
    state = solve_surface(right_angle_tensions, unequal_volumes).state
    result = infer_from_radii(*state.radii, *state.centers, state.h)
    assert result.normalization == "t3"
    assert result.tensions == pytest.approx((0.6, 0.8, 1.0), rel=1e-9)
    assert 0.0 < result.conditioning <= 1.0


def test_radius_law_with_flat_interface():
    state = state_from_xh(-3.0, 3.0, 0.0, math.sqrt(3.0))
    result = infer_from_radii(*state.radii, *state.centers, state.h)
    assert result.normalization == "t2"
    assert result.tensions[0] == pytest.approx(1.0)
    assert result.tensions[2] is None
    assert result.note


def test_radius_law_rejects_bad_data():
    with pytest.raises(InvalidInputError):
        infer_from_radii(2.0, 2.0, None, -1.0, 1.0, None, 0.0)
    with pytest.raises(InvalidInputError):
        infer_from_radii(0.5, 2.0, None, -1.0, 1.0, None, 1.0)
    with pytest.raises(InvalidInputError):
        infer_from_radii(None, 2.0, 3.0, None, 1.0, 0.5, 1.0)


# ============================================
# AMBIGUITY FAMILY
# ============================================


def test_family_direction_is_sine_of_junction_angles(family, line_local_min):
    assert family.direction[:3] == pytest.approx(
        tuple(math.sin(p) for p in line_local_min.state.phi)
    )
    assert family.direction[3] == 0.0
    assert all(s > 0 for s in family.direction[:3])


@pytest.mark.parametrize("lam, mu", [(1.0, 0.0), (0.0, 1.0), (2.0, 3.0), (0.5, -0.5)])
def test_every_member_balances_the_same_junction(family, lam, mu):
    assert family.force_residual(lam, mu) <= 1e-10


def test_lami_member_matches_reported_surface_tensions(family):
    lami = family.lami_member()
    assert sum(lami) == pytest.approx(1.0)
    reported = [v / 21.6 for v in (4.2, 8.5, 8.9)]
    for a, b in zip(lami, reported):
        assert a == pytest.approx(b, rel=2e-2)


def test_lami_member_reproduces_geometry_without_line_tension(family, line_local_min):
    volumes = ReducedVolumes.of(0.75, 0.25)
    state = solve_surface(Tensions.of(*family.lami_member()), volumes).state
    assert state.x == pytest.approx(line_local_min.state.x, abs=1e-7)
    assert state.h == pytest.approx(line_local_min.state.h, rel=1e-7)


def test_mu_interval_bounds_positivity(family):
    lo, hi = family.mu_interval(1.0)
    assert lo < 0.0 and hi == math.inf
    assert family.check(1.0, lo + 1e-6).positive
    assert not family.check(1.0, lo - 1e-6).positive


def test_member_checks(family):
    base = family.check(1.0, 0.0)
    assert base.positive and base.local_min_possible
    assert base.tensions == pytest.approx((5.0, 6.0, 4.0, 1.0))
    pure = family.check(0.0, 1.0)
    assert pure.positive and pure.local_min_possible
    assert pure.tensions[3] == 0.0
    negative = family.check(-1.0, 0.0)
    assert not negative.positive
    assert negative.hessian_trace is None


def test_generic_member_keeps_the_junction_critical(family, line_local_min):
    lam, mu = 1.2, 0.5
    assert family.check(lam, mu).positive
    member = Tensions.of(*family.member(lam, mu))
    frozen = line_local_min.state
    points = find_critical_points(member, ReducedVolumes.of(0.75, 0.25))
    match = [
        p
        for p in points
        if max(abs(a - b) for a, b in zip(p.state.z, frozen.z)) <= 1e-8
        and p.state.y == pytest.approx(frozen.y, rel=1e-8)
    ]
    assert len(match) == 1


def test_family_needs_a_local_min(line_local_min):
    saddle = line_local_min.model_copy(update={"classification": Classification.SADDLE})
    with pytest.raises(InvalidInputError):
        ambiguity_family(saddle, Tensions.of(5.0, 6.0, 4.0, kappa=1.0))
