"""
Brute-force global minimizer of the doublet energy.

Independent of every solver: it only lifts (x3, h) onto the constraint
manifold, evaluates the energy on a dense grid, polishes the best grid
points with a downhill simplex, and compares with the boundary stratum
h = 0, where the energy is pi psi(x3^3) and psi is concave between its kinks.
"""
import math
from typing import Literal, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.ndimage import minimum_filter
from scipy.optimize import minimize

from config.logging_config import get_logger
from config.settings import get_settings
from src.geometry import ReducedVolumes, Tensions, boundary_psi, energy_xh, manifold_x

logger = get_logger(__name__)

# h_max in units of w3^(1/3); y >= (4 / w3)^(1/3) puts every critical point below 0.63
H_SPAN = 2.0
# interior samples per psi interval for the concavity check
BOUNDARY_SAMPLES = 64
# below this h, in units of w3^(1/3), a point belongs to the boundary stratum
H_FLOOR = 1e-6
# relative margin an interior energy needs to beat the boundary; ties go to u_k
BOUNDARY_TIE = 1e-12


class InteriorCandidate(BaseModel):
    x3: float
    h: float
    energy: float

    model_config = ConfigDict(frozen=True)


class BoundaryCandidate(BaseModel):
    """which names u_k; x is the kink x3^3 it sits at."""

    which: Literal[1, 2, 3]
    x: float
    energy: float

    model_config = ConfigDict(frozen=True)


class BoundaryScan(BaseModel):
    kinks: list[BoundaryCandidate]
    best: BoundaryCandidate
    # lowest sampled psi strictly between kinks, times pi
    interval_min_energy: float
    # smallest (midpoint - chord) over sampled triples; >= 0 up to rounding when concave
    concavity_margin: float

    @property
    def kinks_win(self) -> bool:
        return self.interval_min_energy >= self.best.energy * (1.0 - 1e-12)


class OracleResult(BaseModel):
    interior: InteriorCandidate
    boundary: BoundaryCandidate
    global_energy: float
    global_tag: str
    grid: int
    x3_span: float
    h_max: float
    h_floor: float
    grid_energy: float
    refined_from: int

    model_config = ConfigDict(frozen=True)


def boundary_scan(
    tensions: Tensions, volumes: ReducedVolumes, samples: int = BOUNDARY_SAMPLES
) -> BoundaryScan:
    """
    Evaluate psi at the kinks x = w1 (u1), -w2 (u2), 0 (u3) and sample the
    open intervals between them to confirm no interior point does better.
    """
    kinks = [
        BoundaryCandidate(
            which=k, x=x, energy=math.pi * float(boundary_psi(x, tensions, volumes))
        )
        for k, x in ((1, volumes.w1), (2, -volumes.w2), (3, 0.0))
    ]
    best = min(kinks, key=lambda b: b.energy)

    interval_min = math.inf
    margin = math.inf
    for lo, hi in ((-volumes.w2, 0.0), (0.0, volumes.w1)):
        xs = np.linspace(lo, hi, samples + 2)[1:-1]
        psi = boundary_psi(xs, tensions, volumes)
        interval_min = min(interval_min, math.pi * float(psi.min()))
        mid = psi[1:-1] - 0.5 * (psi[:-2] + psi[2:])
        margin = min(margin, float(mid.min()))
    return BoundaryScan(
        kinks=kinks, best=best, interval_min_energy=interval_min, concavity_margin=margin
    )


def _grid(tensions: Tensions, volumes: ReducedVolumes, n: int):
    span = float(np.cbrt(volumes.w3))
    h_max = H_SPAN * span
    # nested under doubling: the n-grid is a subset of the 2n-grid
    x3 = np.linspace(-span, span, n + 1)
    h = h_max * np.arange(1, n + 1) / n
    X3, H = np.meshgrid(x3, h, indexing="ij")
    x1, x2 = manifold_x(X3, H, volumes)
    E = energy_xh(x1, x2, X3, H, tensions)
    return span, h_max, x3, h, np.where(np.isfinite(E), E, np.inf)


def _starts(E: np.ndarray, count: int) -> list[tuple[int, int]]:
    """Discrete local minima of the grid first, then the lowest cells overall."""
    local = np.argwhere(minimum_filter(E, size=3, mode="nearest") == E)
    local = sorted((tuple(ij) for ij in local), key=lambda ij: E[ij])
    order = np.dstack(np.unravel_index(np.argsort(E, axis=None), E.shape))[0]
    picked: list[tuple[int, int]] = []
    for ij in [*local, *(tuple(ij) for ij in order[: 2 * count])]:
        if ij not in picked:
            picked.append(ij)
        if len(picked) == count:
            break
    return picked


def oracle_minimize(
    tensions: Tensions,
    volumes: ReducedVolumes,
    *,
    grid: Optional[int] = None,
    starts: Optional[int] = None,
    tolerance: Optional[float] = None,
    max_iterations: Optional[int] = None,
) -> OracleResult:
    """
    Global minimum over the closed constraint manifold.

    Grid: x3 in [-w3^(1/3), w3^(1/3)], h in (0, 2 w3^(1/3)], (grid + 1) x grid
    samples; the best `starts` samples are refined by Nelder-Mead in (x3, h).
    The simplex is kept at h >= H_FLOOR w3^(1/3); lower points are boundary
    samples, whose energy boundary_scan already has exactly, so a refinement
    that ends on the floor is dropped. The interior candidate is the best
    remaining refinement, or the best grid sample if none remains. It must
    undercut the best boundary point by a relative BOUNDARY_TIE to take the
    global tag.
    """
    settings = get_settings()
    n = grid or settings.oracle_grid
    count = starts or settings.oracle_refine_starts
    fatol = tolerance or settings.oracle_simplex_tolerance
    maxiter = max_iterations or settings.oracle_simplex_max_iterations

    span, h_max, x3_axis, h_axis, E = _grid(tensions, volumes, n)
    grid_best = float(E.min())
    h_floor = H_FLOOR * span

    def objective(v: np.ndarray) -> float:
        x3, h = float(v[0]), float(v[1])
        if not h >= h_floor:
            return math.inf
        x1, x2 = manifold_x(x3, h, volumes)
        return float(energy_xh(x1, x2, x3, h, tensions))

    dx, dh = x3_axis[1] - x3_axis[0], h_axis[0]
    picked = _starts(E, count)
    interior: Optional[InteriorCandidate] = None
    for i, j in picked:
        x0 = np.array([x3_axis[i], h_axis[j]])
        simplex = np.array([x0, x0 + [dx, 0.0], x0 + [0.0, 0.5 * dh]])
        result = minimize(
            objective,
            x0,
            method="Nelder-Mead",
            options={
                "initial_simplex": simplex,
                "xatol": 1e-12 * span,
                "fatol": fatol * max(1.0, grid_best),
                "maxiter": maxiter,
            },
        )
        if result.x[1] < 2.0 * h_floor:
            # slid onto the boundary stratum
            continue
        if interior is None or result.fun < interior.energy:
            interior = InteriorCandidate(
                x3=float(result.x[0]), h=float(result.x[1]), energy=float(result.fun)
            )
    if interior is None:
        i, j = np.unravel_index(np.argmin(E), E.shape)
        interior = InteriorCandidate(x3=float(x3_axis[i]), h=float(h_axis[j]), energy=grid_best)

    scan = boundary_scan(tensions, volumes)
    if interior.energy < scan.best.energy * (1.0 - BOUNDARY_TIE):
        tag, best = "interior", interior.energy
    else:
        tag, best = f"u{scan.best.which}", scan.best.energy
    logger.debug(
        "oracle_done",
        tag=tag,
        energy=best,
        grid_energy=grid_best,
        interior=interior.model_dump(),
        concavity_margin=scan.concavity_margin,
    )
    return OracleResult(
        interior=interior,
        boundary=scan.best,
        global_energy=best,
        global_tag=tag,
        grid=n,
        x3_span=span,
        h_max=h_max,
        h_floor=h_floor,
        grid_energy=grid_best,
        refined_from=len(picked),
    )
