"""
Critical points of the volume-constrained energy with line tension.

=== FORWARD MAP ===

Given the outer apexes (z1, z2) the volume constraints fix y and z3:

    y^3 = (q2 - q1) / w3          q3 = (w2 q1 + w1 q2) / w3

and the two force balances are linear in (t1, t2):

    t1 = (t3 sin phi1 + kappa y s2) / sin phi3
    t2 = (t3 sin phi2 - kappa y s1) / sin phi3

So a critical point for given tensions is a zero of the 2-D map
(alpha1, alpha2) -> (N1 - t1 sin phi3, N2 - t2 sin phi3) over the quadrant
(-pi, 0) x (0, pi). We search it by vectorized multistart damped Newton,
deduplicate, and classify each root by the tangent-plane Hessian.
"""
import math
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from config.logging_config import get_logger
from config.settings import get_settings
from src.errors import InvalidInputError, SingularParameterizationError
from src.geometry import (
    BoundaryState,
    DoubletState,
    PressurePair,
    ReducedVolumes,
    Tensions,
    cap_root,
    cubic_q,
    energy,
    young_laplace_pressures,
)
from src.solvers.surface import degenerate_configuration, solve_surface

logger = get_logger(__name__)

# |sin phi3| below this makes the forward map singular
SINGULAR_SINE = 1e-12
# central-difference step for the Newton Jacobian, in radians
JACOBIAN_STEP = 1e-7
MAX_HALVINGS = 40
# structural observation: at most this many real critical points
EXPECTED_MAX_POINTS = 6


# ============================================
# FORWARD MAP
# ============================================


class ForwardImage(BaseModel):
    y: float
    z3: float
    t1: float
    t2: float

    model_config = ConfigDict(frozen=True)


class _Fields(NamedTuple):
    """Everything the forward map derives from (alpha1, alpha2); arrays."""

    z1: np.ndarray
    z2: np.ndarray
    z3: np.ndarray
    y: np.ndarray
    c: tuple
    s: tuple
    sin_phi: tuple
    n1: np.ndarray
    n2: np.ndarray


def _fields(z1, z2, t3: float, kappa: float, volumes: ReducedVolumes) -> _Fields:
    z1 = np.asarray(z1, dtype=float)
    z2 = np.asarray(z2, dtype=float)
    w1, w2, w3 = volumes.w1, volumes.w2, volumes.w3
    q1, q2 = cubic_q(z1), cubic_q(z2)
    y = np.cbrt((q2 - q1) / w3)
    z3 = np.asarray(cap_root((w2 * q1 + w1 * q2) / (2.0 * w3)), dtype=float)

    c = tuple((1.0 - z * z) / (1.0 + z * z) for z in (z1, z2, z3))
    s = tuple(2.0 * z / (1.0 + z * z) for z in (z1, z2, z3))
    sin_phi = (
        s[1] * c[2] - c[1] * s[2],
        s[2] * c[0] - c[2] * s[0],
        s[0] * c[1] - c[0] * s[1],
    )
    n1 = t3 * sin_phi[0] + kappa * y * s[1]
    n2 = t3 * sin_phi[1] - kappa * y * s[0]
    return _Fields(z1, z2, z3, y, c, s, sin_phi, n1, n2)


def forward_map_arrays(z1, z2, t3: float, kappa: float, volumes: ReducedVolumes):
    """Vectorized forward map; entries with |sin phi3| < SINGULAR_SINE are nan."""
    f = _fields(z1, z2, t3, kappa, volumes)
    sin3 = f.sin_phi[2]
    with np.errstate(divide="ignore", invalid="ignore"):
        ok = np.abs(sin3) >= SINGULAR_SINE
        t1 = np.where(ok, f.n1 / sin3, np.nan)
        t2 = np.where(ok, f.n2 / sin3, np.nan)
    return f.y, f.z3, t1, t2


def forward_map(
    z1: float, z2: float, t3: float, kappa: float, volumes: ReducedVolumes
) -> ForwardImage:
    """
    The unique (y, z3, t1, t2) making (z1, z2) a critical point.

    Raises:
        InvalidInputError: unless z1 < 0 < z2
        SingularParameterizationError: sin phi3 = 0
    """
    if not (z1 < 0 < z2):
        raise InvalidInputError(f"forward map needs z1 < 0 < z2, got ({z1}, {z2})")
    f = _fields(z1, z2, t3, kappa, volumes)
    sin3 = float(f.sin_phi[2])
    if abs(sin3) < SINGULAR_SINE:
        raise SingularParameterizationError(
            "sin(phi3) vanishes; tensions are not determined", {"z1": z1, "z2": z2}
        )
    return ForwardImage(
        y=float(f.y), z3=float(f.z3), t1=float(f.n1) / sin3, t2=float(f.n2) / sin3
    )


def residual(
    z1: float,
    z2: float,
    z3: float,
    y: float,
    tensions: Tensions,
    volumes: ReducedVolumes,
) -> np.ndarray:
    """
    The four critical-point equations, zero exactly at a critical point.

    [0] (sum t_k c_k + kappa y) / max(t)
    [1] sum t_k s_k / max(t)
    [2] (q3 - q1) / (w1 y^3) - 1
    [3] (q2 - q3) / (w2 y^3) - 1
    """
    if not y > 0:
        raise InvalidInputError(f"y must be positive, got {y}")
    z = np.array([z1, z2, z3], dtype=float)
    t = np.array(tensions.surface)
    c = (1.0 - z * z) / (1.0 + z * z)
    s = 2.0 * z / (1.0 + z * z)
    scale = t.max()
    q1, q2, q3 = cubic_q(z)
    y3 = y**3
    return np.array(
        [
            (np.dot(t, c) + tensions.kappa * y) / scale,
            np.dot(t, s) / scale,
            (q3 - q1) / (volumes.w1 * y3) - 1.0,
            (q2 - q3) / (volumes.w2 * y3) - 1.0,
        ]
    )


def state_residual(state: DoubletState, tensions: Tensions, volumes: ReducedVolumes) -> float:
    return float(np.max(np.abs(residual(*state.z, state.y, tensions, volumes))))


# ============================================
# HESSIAN AND CLASSIFICATION
# ============================================


class Classification(str, Enum):
    LOCAL_MIN = "LocalMin"
    SADDLE = "Saddle"
    LOCAL_MAX = "LocalMax"
    DEGENERATE = "Degenerate"


def tangent_invariants(c, s, t, ky):
    """
    Trace and determinant of H_T = 2 pi (M_H - kappa y I); broadcasts over arrays.

    c, s, t are length-3 sequences (scalars or arrays of one shape), ky = kappa y.
    M_H is taken in the tangent basis U = (1 + c_k, 0), W = (-s_k, 1):

        trace = 2 pi (2 t_s - 3 kappa y)
        det   = 4 pi^2 (det M_H - 2 kappa y (t_s - kappa y))
    """
    weight = [t[k] * (2.0 + c[k]) for k in range(3)]
    m11 = sum(weight[k] * c[k] * c[k] for k in range(3))
    m22 = sum(weight[k] * s[k] * s[k] for k in range(3))
    m12 = -sum(weight[k] * c[k] * s[k] for k in range(3))
    ts = t[0] + t[1] + t[2]
    trace = 2.0 * math.pi * (2.0 * ts - 3.0 * ky)
    det = 4.0 * math.pi**2 * (m11 * m22 - m12 * m12 - 2.0 * ky * (ts - ky))
    return trace, det


def hessian_tangent(state: DoubletState, tensions: Tensions) -> tuple[float, float]:
    """Trace and determinant of the tangent-plane Hessian at a critical point."""
    trace, det = tangent_invariants(
        state.c, state.s, tensions.surface, tensions.kappa * state.y
    )
    return float(trace), float(det)


def degeneracy_threshold(ts):
    return 1e-9 * (2.0 * math.pi * ts) ** 2


def classify_arrays(trace, det, ts) -> np.ndarray:
    """Vectorized classify; returns the Classification values as strings."""
    eps = degeneracy_threshold(ts)
    return np.where(
        det > eps,
        np.where(trace > 0, Classification.LOCAL_MIN.value, Classification.LOCAL_MAX.value),
        np.where(det < -eps, Classification.SADDLE.value, Classification.DEGENERATE.value),
    )


def classify(trace: float, det: float, ts: float = 1.0) -> Classification:
    """Sign test on (trace, det) with |det| <= 1e-9 (2 pi t_s)^2 counted as degenerate."""
    eps = degeneracy_threshold(ts)
    if det > eps:
        return Classification.LOCAL_MIN if trace > 0 else Classification.LOCAL_MAX
    if det < -eps:
        return Classification.SADDLE
    return Classification.DEGENERATE


class CriticalPoint(BaseModel):
    state: DoubletState
    pressures: PressurePair
    energy: float
    hessian_trace: float
    hessian_det: float
    classification: Classification
    residual: float

    @property
    def is_local_min(self) -> bool:
        return self.classification is Classification.LOCAL_MIN


def make_critical_point(
    state: DoubletState, tensions: Tensions, volumes: ReducedVolumes
) -> CriticalPoint:
    trace, det = hessian_tangent(state, tensions)
    return CriticalPoint(
        state=state,
        pressures=young_laplace_pressures(state, tensions),
        energy=energy(state, tensions),
        hessian_trace=trace,
        hessian_det=det,
        classification=classify(trace, det, tensions.ts),
        residual=state_residual(state, tensions, volumes),
    )


# ============================================
# MULTISTART NEWTON
# ============================================


def _newton_residual(a1, a2, tensions: Tensions, volumes: ReducedVolumes):
    """Cleared-denominator system in angle coordinates, scaled by t_s."""
    f = _fields(np.tan(0.5 * a1), np.tan(0.5 * a2), tensions.t3, tensions.kappa, volumes)
    sin3 = f.sin_phi[2]
    r1 = (f.n1 - tensions.t1 * sin3) / tensions.ts
    r2 = (f.n2 - tensions.t2 * sin3) / tensions.ts
    return r1, r2


def _inside(a1, a2):
    return (a1 > -math.pi) & (a1 < 0.0) & (a2 > 0.0) & (a2 < math.pi)


def _newton(
    a1: np.ndarray,
    a2: np.ndarray,
    tensions: Tensions,
    volumes: ReducedVolumes,
    tolerance: float,
    max_iterations: int,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Damped Newton from every start at once; returns final angles and residual norms."""
    a1 = a1.copy()
    a2 = a2.copy()
    with np.errstate(all="ignore"):
        r1, r2 = _newton_residual(a1, a2, tensions, volumes)
        norm = np.maximum(np.abs(r1), np.abs(r2))
        stalled = ~np.isfinite(norm)

        for _ in range(max_iterations):
            active = np.flatnonzero((norm > tolerance) & ~stalled)
            if active.size == 0:
                break
            b1, b2 = a1[active], a2[active]
            f1, f2 = r1[active], r2[active]
            d = JACOBIAN_STEP
            p1, p2 = _newton_residual(b1 + d, b2, tensions, volumes)
            m1, m2 = _newton_residual(b1 - d, b2, tensions, volumes)
            j11, j21 = (p1 - m1) / (2 * d), (p2 - m2) / (2 * d)
            p1, p2 = _newton_residual(b1, b2 + d, tensions, volumes)
            m1, m2 = _newton_residual(b1, b2 - d, tensions, volumes)
            j12, j22 = (p1 - m1) / (2 * d), (p2 - m2) / (2 * d)
            det = j11 * j22 - j12 * j21
            step1 = -(j22 * f1 - j12 * f2) / det
            step2 = -(-j21 * f1 + j11 * f2) / det
            bad = ~(np.isfinite(step1) & np.isfinite(step2))

            current = norm[active]
            accepted = bad.copy()
            lam = np.ones(active.size)
            new1, new2 = b1.copy(), b2.copy()
            new_r1, new_r2, new_norm = f1.copy(), f2.copy(), current.copy()
            for _ in range(MAX_HALVINGS):
                pending = ~accepted
                if not pending.any():
                    break
                c1 = b1 + lam * step1
                c2 = b2 + lam * step2
                g1, g2 = _newton_residual(c1, c2, tensions, volumes)
                g_norm = np.maximum(np.abs(g1), np.abs(g2))
                better = pending & _inside(c1, c2) & np.isfinite(g_norm) & (g_norm < current)
                new1[better], new2[better] = c1[better], c2[better]
                new_r1[better], new_r2[better] = g1[better], g2[better]
                new_norm[better] = g_norm[better]
                accepted |= better
                lam = np.where(accepted, lam, 0.5 * lam)

            moved = accepted & ~bad
            stalled[active[~moved]] = True
            a1[active], a2[active] = new1, new2
            r1[active], r2[active] = new_r1, new_r2
            norm[active] = new_norm
    return a1, a2, norm


def start_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    """n x n cell-centred starts over (-pi, 0) x (0, pi), row-major in alpha1."""
    centres = (np.arange(n) + 0.5) * math.pi / n
    a1, a2 = np.meshgrid(centres - math.pi, centres, indexing="ij")
    return a1.ravel(), a2.ravel()


def find_critical_points(
    tensions: Tensions,
    volumes: ReducedVolumes,
    *,
    grid: Optional[int] = None,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None,
    dedup_radius: Optional[float] = None,
    residual_tolerance: Optional[float] = None,
) -> list[CriticalPoint]:
    """
    All interior critical points reachable from the start grid, sorted by energy.

    Args:
        tensions, volumes: problem data
        grid: starts per angle axis (default settings.newton_grid)
        tolerance: Newton stop on the t_s-scaled residual
        max_iterations: Newton iteration cap
        dedup_radius: max-norm cluster radius over (z1, z2, z3, y w3^(1/3))
        residual_tolerance: acceptance on the full critical-point residual
    """
    settings = get_settings()
    n = grid or settings.newton_grid
    tol = tolerance or settings.newton_tolerance
    iterations = max_iterations or settings.newton_max_iterations
    radius = dedup_radius or settings.dedup_radius
    accept = residual_tolerance or settings.residual_tolerance
    if n < 2:
        raise InvalidInputError(f"grid must be at least 2, got {n}")

    a1, a2, norm = _newton(*start_grid(n), tensions, volumes, tol, iterations)
    # Newton may stall just above tol in the last bits; the full residual decides
    candidates = np.flatnonzero(np.isfinite(norm) & (norm <= 1e3 * tol))

    length = float(np.cbrt(volumes.w3))
    kept: list[tuple[np.ndarray, CriticalPoint]] = []
    for index in candidates:
        z1 = math.tan(0.5 * a1[index])
        z2 = math.tan(0.5 * a2[index])
        if not (z1 < 0 < z2):
            continue
        f = _fields(z1, z2, tensions.t3, tensions.kappa, volumes)
        try:
            state = DoubletState(z1=z1, z2=z2, z3=float(f.z3), y=float(f.y))
        except ValueError:
            continue
        res = state_residual(state, tensions, volumes)
        if not res <= accept:
            continue
        key = np.array([z1, z2, state.z3, state.y * length])
        for i, (other_key, other) in enumerate(kept):
            if np.max(np.abs(key - other_key)) <= radius:
                if res < other.residual:
                    kept[i] = (key, make_critical_point(state, tensions, volumes))
                break
        else:
            kept.append((key, make_critical_point(state, tensions, volumes)))

    points = sorted((p for _, p in kept), key=lambda p: p.energy)
    for point in points:
        relations = relation_checks(point.state, tensions)
        if not relations.holds():
            logger.warning(
                "relation_check_failed",
                z=point.state.z,
                y=point.state.y,
                max_abs=relations.max_abs,
                tolerance=settings.relation_tolerance,
            )
    minima = sum(p.is_local_min for p in points)
    logger.debug(
        "critical_points_found", count=len(points), local_min=minima, starts=n * n
    )
    if len(points) > EXPECTED_MAX_POINTS or minima > 1:
        logger.warning(
            "critical_point_count_finding",
            count=len(points),
            local_min=minima,
            tensions=tensions.model_dump(),
            volumes=volumes.model_dump(),
            grid=n,
            points=[(p.state.z, p.state.y, p.classification.value) for p in points],
        )
    return points


# ============================================
# FORCE-BALANCE RELATIONS
# ============================================


class RelationReport(BaseModel):
    """
    Identities implied by the two force balances, scaled by max(t) or max(t)^2.

    cos_relation[k]:  t_k + t_{k+1} cos phi_{k-1} + t_{k-1} cos phi_{k+1} + kappa y c_k
    sin_relation[k]:  t_{k+1} sin phi_{k-1} - t_{k-1} sin phi_{k+1} + kappa y s_k
    kappa_identity:   sum t_k^2 + 2 sum t_{k+1} t_{k-1} cos phi_k - kappa^2 y^2
    cos_phi[k]:       cos phi_k - (t_k^2 - t_{k-1}^2 - t_{k+1}^2 + kappa y (2 t_k c_k + kappa y)) / (2 t_{k-1} t_{k+1})
    """

    cos_relation: tuple[float, float, float]
    sin_relation: tuple[float, float, float]
    kappa_identity: float
    cos_phi: tuple[float, float, float]

    model_config = ConfigDict(frozen=True)

    @property
    def max_abs(self) -> float:
        values = [*self.cos_relation, *self.sin_relation, self.kappa_identity, *self.cos_phi]
        return max(abs(v) for v in values)

    def holds(self, tolerance: Optional[float] = None) -> bool:
        return self.max_abs <= (tolerance or get_settings().relation_tolerance)


def relation_checks(state: DoubletState, tensions: Tensions) -> RelationReport:
    t = tensions.surface
    c, s = state.c, state.s
    phi = state.phi
    ky = tensions.kappa * state.y
    scale = max(t)
    cos_rel, sin_rel, cos_phi = [], [], []
    for k in range(3):
        kp, km = (k + 1) % 3, (k - 1) % 3
        cos_rel.append(
            (t[k] + t[kp] * math.cos(phi[km]) + t[km] * math.cos(phi[kp]) + ky * c[k]) / scale
        )
        sin_rel.append(
            (t[kp] * math.sin(phi[km]) - t[km] * math.sin(phi[kp]) + ky * s[k]) / scale
        )
        predicted = (t[k] ** 2 - t[km] ** 2 - t[kp] ** 2 + ky * (2.0 * t[k] * c[k] + ky)) / (
            2.0 * t[km] * t[kp]
        )
        cos_phi.append(math.cos(phi[k]) - predicted)
    identity = (
        sum(tk * tk for tk in t)
        + 2.0 * sum(t[(k + 1) % 3] * t[(k - 1) % 3] * math.cos(phi[k]) for k in range(3))
        - ky * ky
    ) / scale**2
    return RelationReport(
        cos_relation=tuple(cos_rel),
        sin_relation=tuple(sin_rel),
        kappa_identity=identity,
        cos_phi=tuple(cos_phi),
    )


# ============================================
# GLOBAL MINIMUM
# ============================================


class GlobalResult(BaseModel):
    """
    global_tag is "interior" or "u1" / "u2" / "u3".
    """

    critical_points: list[CriticalPoint]
    boundaries: list[BoundaryState]
    global_tag: str
    global_energy: float

    @property
    def local_minima(self) -> list[CriticalPoint]:
        return [p for p in self.critical_points if p.is_local_min]

    @property
    def minimizer(self):
        if self.global_tag == "interior":
            return min(self.local_minima, key=lambda p: p.energy)
        return self.boundaries[int(self.global_tag[1]) - 1]


def global_minimum(
    tensions: Tensions, volumes: ReducedVolumes, **search
) -> GlobalResult:
    """
    Compare interior local minima with E(u1), E(u2), E(u3).

    Without line tension the surface solver supplies the (unique) interior
    candidate; otherwise find_critical_points does, with **search passed on.
    """
    if tensions.kappa == 0:
        solution = solve_surface(tensions, volumes)
        points = (
            [make_critical_point(solution.state, tensions, volumes)] if solution.interior else []
        )
    else:
        points = find_critical_points(tensions, volumes, **search)

    boundaries = [degenerate_configuration(k, volumes, tensions) for k in (1, 2, 3)]
    tag, best = min(
        ((f"u{b.which}", b.energy) for b in boundaries), key=lambda item: item[1]
    )
    for point in points:
        if point.is_local_min and point.energy < best:
            tag, best = "interior", point.energy
    logger.debug("global_minimum", tag=tag, energy=best, candidates=len(points))
    return GlobalResult(
        critical_points=points, boundaries=boundaries, global_tag=tag, global_energy=best
    )
