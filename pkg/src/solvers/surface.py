"""
Volume-constrained doublet without line tension.

Interior regime: the pivot apex comes from the monotone solve, its two
neighbours from the Mobius maps through the fixed junction angles, and the
scale h from the pivot's volume relation. Degenerate regimes return the
boundary point u_k of the vanished interface.
"""
import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError
from scipy.optimize import minimize_scalar

from config.logging_config import get_logger
from config.settings import get_settings
from src.errors import ConvergenceError, InvalidInputError, WrongSolverError
from src.geometry import (
    BoundaryState,
    DoubletState,
    PressurePair,
    ReducedVolumes,
    Tensions,
    boundary_psi,
    cubic_q,
    energy,
    volumes as state_volumes,
    young_laplace_pressures,
)
from src.solvers.quintic import pivot_cotangents, pivot_root
from src.solvers.regime import EQUALITY_SLACK, TensionRegime, classify_regime

logger = get_logger(__name__)

DEFAULT_PIVOT = 3


# ============================================
# BOUNDARY POINTS u_k
# ============================================


def boundary_energies(t1, t2, t3, volumes: ReducedVolumes):
    """
    E(u1), E(u2), E(u3); tensions may be arrays of one shape.

    The junction has zero length at h = 0, so kappa drops out.
    """
    a1, a2, a3 = (w ** (2.0 / 3.0) for w in (volumes.w1, volumes.w2, volumes.w3))
    return (
        math.pi * (t2 * a3 + t3 * a1),
        math.pi * (t1 * a3 + t3 * a2),
        math.pi * (t1 * a1 + t2 * a2),
    )


def degenerate_configuration(
    k: int, volumes: ReducedVolumes, tensions: Tensions
) -> BoundaryState:
    """
    The boundary point u_k where interface k has vanished (h = 0, x_k = 0).

    u1: cell 1 sits inside cell 2, u2: the reverse, u3: two separate balls.
    """
    w1, w2, w3 = volumes.w1, volumes.w2, volumes.w3
    if k == 1:
        x = (0.0, float(np.cbrt(w3)), float(np.cbrt(w1)))
    elif k == 2:
        x = (-float(np.cbrt(w3)), 0.0, -float(np.cbrt(w2)))
    elif k == 3:
        x = (-float(np.cbrt(w1)), float(np.cbrt(w2)), 0.0)
    else:
        raise InvalidInputError(f"boundary index must be 1, 2 or 3, got {k}")
    e = boundary_energies(*tensions.surface, volumes)[k - 1]
    return BoundaryState(which=k, x1=x[0], x2=x[1], x3=x[2], energy=float(e))


class BoundaryHessian(BaseModel):
    """
    Energy Hessian at u_k in the local chart (x_k, h).

    verdict:
        strict        t_k > t_{k+1} + t_{k-1}; u_k is a strict local minimizer
        semidefinite  equality; positive semidefinite, u_k is still the minimizer
        excluded      u_k is not a local minimizer on the constraint manifold
    """

    k: int
    eigenvalues: tuple[float, float]
    verdict: Literal["strict", "semidefinite", "excluded"]

    model_config = ConfigDict(frozen=True)


def boundary_hessian(k: int, tensions: Tensions) -> BoundaryHessian:
    """2 pi diag(t_k, t_k - t_{k+1} - t_{k-1}) and its verdict."""
    if k not in (1, 2, 3):
        raise InvalidInputError(f"boundary index must be 1, 2 or 3, got {k}")
    t = tensions.surface
    tk = t[k - 1]
    gap = tk - t[k % 3] - t[(k - 2) % 3]
    if gap > EQUALITY_SLACK * tensions.ts:
        verdict = "strict"
    elif gap >= -EQUALITY_SLACK * tensions.ts:
        verdict = "semidefinite"
    else:
        verdict = "excluded"
    return BoundaryHessian(
        k=k, eigenvalues=(2.0 * math.pi * tk, 2.0 * math.pi * gap), verdict=verdict
    )


class PsiMaximum(BaseModel):
    x: float
    psi: float

    model_config = ConfigDict(frozen=True)


class BoundaryCriticalPoints(BaseModel):
    """Critical points of psi on the h = 0 stratum."""

    minima: list[BoundaryState]
    maxima: list[PsiMaximum]


def boundary_critical_points(
    tensions: Tensions, volumes: ReducedVolumes
) -> BoundaryCriticalPoints:
    """
    Minima of psi sit at the kinks -w2, 0, w1 (the points u2, u3, u1); psi is
    concave in between, so each bounded interval carries exactly one maximum.
    """
    minima = [degenerate_configuration(k, volumes, tensions) for k in (2, 3, 1)]
    maxima = []
    for lo, hi in ((-volumes.w2, 0.0), (0.0, volumes.w1)):
        found = minimize_scalar(
            lambda x: -boundary_psi(x, tensions, volumes),
            bounds=(lo, hi),
            method="bounded",
            options={"xatol": 1e-12 * max(1.0, hi - lo)},
        )
        maxima.append(PsiMaximum(x=float(found.x), psi=float(-found.fun)))
    return BoundaryCriticalPoints(minima=minima, maxima=maxima)


# ============================================
# INTERIOR SOLUTION
# ============================================


class SurfaceResiduals(BaseModel):
    """
    Force balance scaled by max(t), volumes relative to the targets.

    force = (sum t_k c_k + kappa y, sum t_k s_k) / max(t)
    """

    force: tuple[float, float]
    volume: tuple[float, float]

    model_config = ConfigDict(frozen=True)

    @property
    def max_force(self) -> float:
        return max(abs(f) for f in self.force)

    @property
    def max_volume(self) -> float:
        return max(abs(v) for v in self.volume)


def surface_residuals(
    state: DoubletState, tensions: Tensions, volumes: ReducedVolumes
) -> SurfaceResiduals:
    t = tensions.surface
    scale = max(t)
    c, s = state.c, state.s
    cos_balance = sum(tk * ck for tk, ck in zip(t, c)) + tensions.kappa * state.y
    sin_balance = sum(tk * sk for tk, sk in zip(t, s))
    w1, w2 = state_volumes(state)
    return SurfaceResiduals(
        force=(cos_balance / scale, sin_balance / scale),
        volume=((w1 - volumes.w1) / volumes.w1, (w2 - volumes.w2) / volumes.w2),
    )


class SurfaceSolution(BaseModel):
    """
    Result of solve_surface.

    Interior regime: state, pressures and residuals are set and boundary is
    None. Degenerate regime: only boundary is set.
    """

    regime: TensionRegime
    energy: float
    state: Optional[DoubletState] = None
    pressures: Optional[PressurePair] = None
    residuals: Optional[SurfaceResiduals] = None
    pivot: Optional[int] = None
    boundary: Optional[BoundaryState] = None
    boundary_hessian: Optional[BoundaryHessian] = None

    @property
    def interior(self) -> bool:
        return self.state is not None


def reconstruct(k: int, tensions: Tensions, volumes: ReducedVolumes) -> DoubletState:
    """
    Full state from the pivot root z_k*.

    z_{k+1} = (y_{k-1} z - 1) / (z + y_{k-1})
    z_{k-1} = (y_{k+1} z + 1) / (y_{k+1} - z)
    h^3 = g_k / (q(z_{k+1}) - q(z_{k-1}))
    """
    y_minus, y_plus = pivot_cotangents(k, tensions)
    z = pivot_root(k, tensions, volumes)
    z_next = (y_minus * z - 1.0) / (z + y_minus)
    z_prev = (y_plus * z + 1.0) / (y_plus - z)

    zs = [0.0, 0.0, 0.0]
    zs[k - 1] = z
    zs[k % 3] = z_next
    zs[(k - 2) % 3] = z_prev

    g = volumes.g[k - 1]
    h = float(np.cbrt(g / (cubic_q(z_next) - cubic_q(z_prev))))
    state = DoubletState(z1=zs[0], z2=zs[1], z3=zs[2], y=1.0 / h)
    state._h = h
    return state


def pivot_order(volumes: ReducedVolumes, pivot: Optional[int] = None) -> list[int]:
    """Requested pivot (default 3) first, the rest by increasing |d_k|."""
    first = pivot or DEFAULT_PIVOT
    rest = sorted((k for k in (1, 2, 3) if k != first), key=lambda k: abs(volumes.d[k - 1]))
    return [first, *rest]


def solve_surface(
    tensions: Tensions,
    volumes: ReducedVolumes,
    *,
    pivot: Optional[int] = None,
    residual_tolerance: Optional[float] = None,
) -> SurfaceSolution:
    """
    Unique minimizer of the surface energy at fixed volumes.

    Args:
        tensions: surface tensions; kappa must be 0
        volumes: reduced volumes
        pivot: preferred pivot cap (falls back to the others on failure)
        residual_tolerance: acceptance threshold; defaults to settings

    Raises:
        WrongSolverError: kappa != 0
        ConvergenceError: no pivot produced a state within tolerance
    """
    if tensions.kappa != 0:
        raise WrongSolverError(
            "solve_surface needs kappa = 0; use the line-tension solver",
            {"kappa": tensions.kappa},
        )
    if pivot is not None and pivot not in (1, 2, 3):
        raise InvalidInputError(f"pivot must be 1, 2 or 3, got {pivot}")
    tol = residual_tolerance or get_settings().residual_tolerance

    regime = classify_regime(tensions)
    if not regime.interior:
        boundary = degenerate_configuration(regime.index, volumes, tensions)
        logger.debug("surface_degenerate", regime=regime.label.value, energy=boundary.energy)
        return SurfaceSolution(
            regime=regime,
            energy=boundary.energy,
            boundary=boundary,
            boundary_hessian=boundary_hessian(regime.index, tensions),
        )

    attempts = []
    for k in pivot_order(volumes, pivot):
        try:
            state = reconstruct(k, tensions, volumes)
        except (ConvergenceError, ValidationError, ZeroDivisionError) as exc:
            attempts.append({"pivot": k, "error": str(exc)})
            continue
        residuals = surface_residuals(state, tensions, volumes)
        if residuals.max_force <= tol and residuals.max_volume <= tol:
            logger.debug(
                "surface_solved",
                pivot=k,
                force_residual=residuals.max_force,
                volume_residual=residuals.max_volume,
            )
            return SurfaceSolution(
                regime=regime,
                energy=energy(state, tensions),
                state=state,
                pressures=young_laplace_pressures(state, tensions),
                residuals=residuals,
                pivot=k,
            )
        attempts.append(
            {"pivot": k, "force": residuals.max_force, "volume": residuals.max_volume}
        )

    logger.warning("surface_solve_failed", attempts=attempts)
    raise ConvergenceError(
        "no pivot reconstructed a state within tolerance",
        {"tensions": tensions.model_dump(), "volumes": volumes.model_dump(), "attempts": attempts},
    )