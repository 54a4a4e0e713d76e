"""
Phase Scan Test Suite

Tests:
1. Angle-grid scan: retained cells, classification, global tags, ordering
   and how the local-minimum region responds to line tension
2. Equal-volume thresholds and threshold bisection
3. Bulge boundary: the exact sin(phi1) = 0 configuration

Run: pytest test_phase_scan.py
"""
import math

import numpy as np
import pytest

from src.errors import InvalidInputError, UnsupportedInputError
from src.geometry import ReducedVolumes, Tensions, energy, state_from_xh
from src.scan import (
    CSV_COLUMNS,
    bulge_boundary_solve,
    locate_threshold,
    scan_angle_grid,
    scan_arrays,
    thresholds_equal_volumes,
)
from src.solvers import (
    Classification,
    classify,
    find_critical_points,
    forward_map,
    hessian_tangent,
)

EQUAL = ReducedVolumes.of(0.5, 0.5)

# sin(phi1) = 0 configuration at t2 = 5/4, t3 = 1, kappa = 0.1, w = (1/2, 1/2)
BULGE_T1 = 0.271244499897851
BULGE_Z = (-2.031331771464625, 1.756721787151541, -0.569242100436099)
BULGE_Y = 2.930530863266979
BULGE_TRACE = 26.158972256436426
BULGE_DET = 4.615158111925040


@pytest.fixture(scope="module")
def weak_line_scan():
    return scan_arrays(1.0, 0.1, EQUAL, 256)


@pytest.fixture(scope="module")
def bulge_point():
    points = bulge_boundary_solve(1.25, 1.0, 0.1, EQUAL)
    return min(points, key=lambda p: abs(p.t1 - BULGE_T1))


# ============================================
# SCAN
# ============================================


def test_scan_cells_are_positive_and_ordered():
    cells = scan_angle_grid(1.0, 0.5, EQUAL, 32)
    assert cells
    assert all(c.t1 > 0 and c.t2 > 0 for c in cells)
    assert all(-math.pi < c.alpha1 < 0 < c.alpha2 < math.pi for c in cells)
    keys = [(c.alpha1, c.alpha2) for c in cells]
    assert keys == sorted(keys)
    assert len(cells[0].row()) == len(CSV_COLUMNS)


def test_scan_is_reproducible():
    a = [c.row() for c in scan_angle_grid(1.0, 0.3, ReducedVolumes.of(0.3, 0.7), 24)]
    b = [c.row() for c in scan_angle_grid(1.0, 0.3, ReducedVolumes.of(0.3, 0.7), 24)]
    assert a == b


def test_scan_cells_agree_with_forward_map_and_hessian():
    kappa = 0.4
    for cell in scan_angle_grid(1.0, kappa, EQUAL, 16)[::7]:
        z1, z2 = math.tan(0.5 * cell.alpha1), math.tan(0.5 * cell.alpha2)
        image = forward_map(z1, z2, 1.0, kappa, EQUAL)
        assert (image.t1, image.t2) == pytest.approx((cell.t1, cell.t2), rel=1e-12)
        h = 1.0 / cell.y
        state = state_from_xh(z1 * h, z2 * h, cell.z3 * h, h)
        tensions = Tensions.of(cell.t1, cell.t2, 1.0, kappa=kappa)
        trace, det = hessian_tangent(state, tensions)
        assert cell.trace == pytest.approx(trace, rel=1e-9)
        assert cell.det == pytest.approx(det, rel=1e-7, abs=1e-9 * tensions.ts**2)
        assert cell.energy == pytest.approx(energy(state, tensions), rel=1e-12)


def test_interior_tag_needs_a_local_min_below_the_boundaries():
    for cell in scan_angle_grid(1.0, 0.2, EQUAL, 48):
        if cell.global_tag == "interior":
            assert cell.is_local_min
            assert cell.energy < min(cell.E1, cell.E2, cell.E3)
        else:
            energies = {"u1": cell.E1, "u2": cell.E2, "u3": cell.E3}
            assert energies[cell.global_tag] == min(energies.values())


def test_weak_line_tension_region_reaches_large_equal_tensions(weak_line_scan):
    cols = weak_line_scan
    local_min = cols["class"] == Classification.LOCAL_MIN.value
    assert np.any(local_min & (np.minimum(cols["t1"], cols["t2"]) > 50.0))


def test_strong_line_tension_region_is_bounded():
    cols = scan_arrays(1.0, 2.6, EQUAL, 256)
    local_min = cols["class"] == Classification.LOCAL_MIN.value
    assert not np.any(local_min & (np.maximum(cols["t1"], cols["t2"]) > 50.0))


def test_without_line_tension_local_mins_fill_the_triangle_region():
    cols = scan_arrays(1.0, 0.0, EQUAL, 64)
    t1, t2 = cols["t1"], cols["t2"]
    triangle = (t1 < t2 + 1.0) & (t2 < t1 + 1.0) & (1.0 < t1 + t2)
    local_min = cols["class"] == Classification.LOCAL_MIN.value
    degenerate = cols["class"] == Classification.DEGENERATE.value
    assert np.any(local_min)
    assert not np.any(local_min & ~triangle)
    assert np.array_equal(local_min | degenerate, triangle)
    assert np.count_nonzero(degenerate) <= 0.01 * t1.size


@pytest.mark.parametrize("t1, t2", [(1.0, 1.0), (2.0, 2.5), (10.0, 10.0)])
def test_local_min_region_shrinks_as_line_tension_grows(t1, t2):
    present = []
    for kappa in (0.05, 0.3, 1.0, 2.0, 4.0, 8.0, 16.0):
        points = find_critical_points(Tensions.of(t1, t2, 1.0, kappa=kappa), EQUAL, grid=32)
        present.append(any(p.is_local_min for p in points))
    assert present[0]
    # beyond the disappearance threshold no cell is a local minimum
    assert not present[-1]
    first_gone = present.index(False)
    assert not any(present[first_gone:])


def test_scan_rejects_tiny_grid():
    with pytest.raises(InvalidInputError):
        scan_angle_grid(1.0, 0.1, EQUAL, 1)


# ============================================
# THRESHOLDS
# ============================================


def test_equal_volume_thresholds():
    th = thresholds_equal_volumes(1.0, EQUAL)
    assert th.kappa_bounded == pytest.approx(1.5)
    assert th.kappa_disappear == pytest.approx(12.17, abs=1e-2)
    assert th.t_singular == pytest.approx(5.0 / 8.0 * (25.0 + 3.0 * math.sqrt(65.0)))
    assert th.t_singular == pytest.approx(30.7417, abs=1e-4)


def test_thresholds_scale_with_volume_and_t3():
    base = thresholds_equal_volumes(1.0, EQUAL)
    scaled = thresholds_equal_volumes(2.0, ReducedVolumes.of(4.0, 4.0))
    assert scaled.kappa_bounded == pytest.approx(base.kappa_bounded * 2.0 * 2.0)
    assert scaled.kappa_disappear == pytest.approx(base.kappa_disappear * 4.0)
    assert scaled.t_singular == pytest.approx(2.0 * base.t_singular)


def test_thresholds_need_equal_volumes():
    with pytest.raises(UnsupportedInputError):
        thresholds_equal_volumes(1.0, ReducedVolumes.of(0.3, 0.7))


def test_locate_threshold_brackets_predicate_change():
    calls = []

    def has_local_min(cols):
        calls.append(1)
        return bool(np.any(cols["class"] == Classification.LOCAL_MIN.value))

    bracket = locate_threshold(1.0, 0.1, 20.0, EQUAL, has_local_min, tol=0.5, n=32)
    assert bracket.kappa_hi - bracket.kappa_lo <= 0.5
    assert 0.1 <= bracket.kappa_lo < bracket.kappa_hi <= 20.0
    assert bracket.evaluations == len(calls)


def test_locate_threshold_needs_a_bracket():
    with pytest.raises(InvalidInputError):
        locate_threshold(1.0, 0.1, 0.2, EQUAL, lambda cols: True, n=16)


# ============================================
# BULGE BOUNDARY
# ============================================


def test_bulge_boundary_exact_point(bulge_point):
    p = bulge_point
    assert p.t1 == pytest.approx(BULGE_T1, abs=1e-9)
    assert p.state.z == pytest.approx(BULGE_Z, abs=1e-9)
    assert p.state.y == pytest.approx(BULGE_Y, abs=1e-9)
    assert p.hessian_trace == pytest.approx(BULGE_TRACE, abs=1e-9)
    assert p.hessian_det == pytest.approx(BULGE_DET, abs=1e-9)
    assert p.classification is Classification.LOCAL_MIN


def test_bulge_boundary_point_is_critical_with_tangent_caps(bulge_point):
    p = bulge_point
    assert p.residual <= 1e-10
    assert math.sin(p.state.phi[0]) == pytest.approx(0.0, abs=1e-12)
    assert p.state.z3 * p.state.z2 == pytest.approx(-1.0)


def test_bulge_points_are_sorted_and_classified():
    points = bulge_boundary_solve(1.25, 1.0, 0.1, EQUAL)
    assert [p.t1 for p in points] == sorted((p.t1 for p in points), reverse=True)
    for p in points:
        assert p.branch in (-1, 1)
        assert p.classification is classify(p.hessian_trace, p.hessian_det, p.t1 + 2.25)


def test_bulge_boundary_needs_line_tension():
    with pytest.raises(InvalidInputError):
        bulge_boundary_solve(1.25, 1.0, 0.0, EQUAL)
