"""
Bulging: junction angles beyond pi.

On the boundary of the bulged region sin phi1 = 0, i.e. caps 2 and 3 are
tangent (z3 = -1/z2). The force balance then solves in closed form for
given (t1, t2, t3, kappa); with c = w2^(1/3), u = t2 - t3 and
r = +-sqrt(t1^2 c^2 - 4 kappa^2):

    z2 = (u c + r + sqrt(c^2 (u^2 + t1^2) + 2 u c r)) / (2 kappa)
    y  = (1 + z2^2) / (z2 c)
    s1 = -u s2 / t1,   c1 = -(u c2 + kappa y) / t1

Cell 2's volume holds identically; the one remaining equation is cell 1's
volume, solved for t1 along t1 = 2 kappa cosh(s) / c, r = 2 kappa sinh(s).
"""
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import brentq

from config.logging_config import get_logger
from config.settings import get_settings
from src.errors import InvalidInputError
from src.geometry import DoubletState, ReducedVolumes, Tensions, cubic_q
from src.solvers.line import (
    Classification,
    CriticalPoint,
    classify,
    degeneracy_threshold,
    find_critical_points,
    hessian_tangent,
    state_residual,
)

logger = get_logger(__name__)

# span of t1 searched, as a multiple of t2 + t3 above the 2 kappa / c floor
T1_SPAN = 20.0

# reference configuration of the widest bulge observed
MAX_BULGE_TENSIONS = Tensions(t1=3.544814028, t2=3.838944848, t3=1.730430441, kappa=1.0)
MAX_BULGE_VOLUMES = ReducedVolumes(w1=0.820008308, w2=0.179991692)


def _branch(s, t2: float, t3: float, kappa: float, volumes: ReducedVolumes):
    """Closed-form geometry along the sinh parameterization; nan where invalid."""
    c = float(np.cbrt(volumes.w2))
    u = t2 - t3
    t1 = 2.0 * kappa * np.cosh(s) / c
    r = 2.0 * kappa * np.sinh(s)
    with np.errstate(invalid="ignore", divide="ignore"):
        z2 = (u * c + r + np.sqrt(c * c * (u * u + t1 * t1) + 2.0 * u * c * r)) / (2.0 * kappa)
        z2 = np.where(z2 > 0, z2, np.nan)
        y = (1.0 + z2 * z2) / (z2 * c)
        c2 = (1.0 - z2 * z2) / (1.0 + z2 * z2)
        s2 = 2.0 * z2 / (1.0 + z2 * z2)
        s1 = -u * s2 / t1
        c1 = -(u * c2 + kappa * y) / t1
        z1 = s1 / (1.0 + c1)
        z3 = -1.0 / z2
    return t1, z1, z2, z3, y


def _volume_condition(s, t2, t3, kappa, volumes):
    t1, z1, z2, z3, y = _branch(s, t2, t3, kappa, volumes)
    return (cubic_q(z3) - cubic_q(z1)) / (volumes.w1 * y**3) - 1.0


class BulgeBoundaryPoint(BaseModel):
    """A critical configuration with sin phi1 = 0 exactly, and the t1 that makes it one."""

    t1: float
    state: DoubletState
    branch: int
    residual: float
    hessian_trace: float
    hessian_det: float
    classification: Classification


def bulge_boundary_solve(
    t2: float,
    t3: float,
    kappa: float,
    volumes: ReducedVolumes,
    *,
    points: Optional[int] = None,
) -> list[BulgeBoundaryPoint]:
    """
    All sin phi1 = 0 configurations for (t2, t3, kappa), largest t1 first.

    branch is the sign of r. An empty list means no real branch exists.

    Raises:
        InvalidInputError: kappa <= 0
    """
    if not kappa > 0:
        raise InvalidInputError(f"bulge boundary needs kappa > 0, got {kappa}")
    n = points or get_settings().bulge_scan_points
    c = float(np.cbrt(volumes.w2))
    t1_max = 2.0 * kappa / c + T1_SPAN * (t2 + t3)
    span = math.acosh(t1_max * c / (2.0 * kappa))
    grid = np.linspace(-span, span, n)
    values = _volume_condition(grid, t2, t3, kappa, volumes)

    found = []
    for i in range(n - 1):
        a, b = values[i], values[i + 1]
        if not (np.isfinite(a) and np.isfinite(b)) or a * b > 0:
            continue
        root = brentq(
            lambda s: float(_volume_condition(s, t2, t3, kappa, volumes)),
            grid[i],
            grid[i + 1],
            xtol=1e-15,
            rtol=4 * np.finfo(float).eps,
        )
        t1, z1, z2, z3, y = (float(v) for v in _branch(root, t2, t3, kappa, volumes))
        try:
            state = DoubletState(z1=z1, z2=z2, z3=z3, y=y)
        except ValueError:
            continue
        tensions = Tensions(t1=t1, t2=t2, t3=t3, kappa=kappa)
        trace, det = hessian_tangent(state, tensions)
        found.append(
            BulgeBoundaryPoint(
                t1=t1,
                state=state,
                branch=1 if root >= 0 else -1,
                residual=state_residual(state, tensions, volumes),
                hessian_trace=trace,
                hessian_det=det,
                classification=classify(trace, det, tensions.ts),
            )
        )
    found.sort(key=lambda p: -p.t1)
    logger.debug("bulge_boundary", count=len(found), t1=[p.t1 for p in found])
    return found


class WidestBulge(BaseModel):
    """
    Interior junction angles (degrees) of the selected critical point.

    fallback is set when no point classified as LocalMin and a positive-trace
    point with det >= -eps was taken instead.
    """

    phi_deg: tuple[float, float, float]
    point: CriticalPoint
    fallback: bool

    model_config = ConfigDict(frozen=True)

    @property
    def phi1_deg(self) -> float:
        return self.phi_deg[0]


def max_bulge_probe(
    tensions: Tensions = MAX_BULGE_TENSIONS,
    volumes: ReducedVolumes = MAX_BULGE_VOLUMES,
    **search,
) -> WidestBulge:
    """
    Solve the line-tension problem at the widest observed bulge and report phi.

    Raises:
        InvalidInputError: if no local minimum candidate is found
    """
    points = find_critical_points(tensions, volumes, **search)
    minima = [p for p in points if p.is_local_min]
    fallback = False
    if not minima:
        eps = degeneracy_threshold(tensions.ts)
        minima = [p for p in points if p.hessian_trace > 0 and p.hessian_det >= -eps]
        fallback = True
    if not minima:
        raise InvalidInputError(
            "no local minimum at the widest-bulge parameters",
            {"points": [p.classification.value for p in points]},
        )
    best = max(minima, key=lambda p: p.state.phi[0])
    if fallback:
        logger.warning("max_bulge_fallback", det=best.hessian_det, trace=best.hessian_trace)
    return WidestBulge(
        phi_deg=tuple(math.degrees(p) for p in best.state.interior_angles),
        point=best,
        fallback=fallback,
    )
