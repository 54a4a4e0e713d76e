"""
Solve Router

Equilibrium shapes for prescribed volumes or pressures, and the
brute-force oracle for cross-checking them.

=== ENDPOINTS ===

    POST /volumes    surface solver (kappa = 0) or line-tension solver (kappa > 0)
    POST /pressures  closed-form pressure solver (kappa = 0 only)
    POST /oracle     grid + simplex global minimum, independent of the solvers

=== SYNC HANDLERS ===

The solvers are CPU bound numpy/scipy code. Handlers are plain `def`, so
FastAPI runs them in its threadpool instead of blocking the event loop.
Domain errors propagate to the handlers in api/main.py, which map them
to 422 (invalid input) or 500 (convergence, invariant violation).
"""

import time
from typing import Optional

from fastapi import APIRouter

from api.schemas.base import APIResponse, MetaInfo
from api.schemas.doublet import OracleRequest, SolveVolumesRequest
from config.logging_config import get_logger
from config.settings import get_settings
from src.cli.output import line_document, plain, state_document, surface_document
from src.geometry import energy, volumes as state_volumes
from src.oracle import oracle_minimize
from src.solvers import (
    PressureProblem,
    global_minimum,
    pressure_residuals,
    solve_pressure,
    solve_surface,
)
from src.solvers.regime import triangle_regime

logger = get_logger(__name__)

router = APIRouter()


def _meta(start: float, grid: Optional[int] = None) -> MetaInfo:
    return MetaInfo(processing_time_ms=int((time.perf_counter() - start) * 1000), grid=grid)


@router.post("/volumes", response_model=APIResponse)
def solve_volumes(request: SolveVolumesRequest):
    """
    Global minimizer at prescribed volumes.

    Without line tension the answer is the unique surface-solver state (or
    a boundary point u_k); with line tension every critical point found is
    listed with its classification, and the global tag compares them with
    the three boundary energies.
    """
    start = time.perf_counter()
    tensions, volumes = request.tensions, request.volumes
    grid = None
    if tensions.kappa == 0:
        document = surface_document(tensions, solve_surface(tensions, volumes))
    else:
        grid = request.newton_grid or get_settings().newton_grid
        result = global_minimum(tensions, volumes, grid=grid)
        document = line_document(
            tensions, result, triangle_regime(*tensions.surface).label.value
        )
    logger.info("api_solve_volumes", global_tag=document["global"])
    return APIResponse(data=plain(document), meta=_meta(start, grid))


@router.post("/pressures", response_model=APIResponse)
def solve_pressures(problem: PressureProblem):
    """Unique doublet with the given pressures (P1, P2 > 0)."""
    start = time.perf_counter()
    state = solve_pressure(problem)
    w1, w2 = state_volumes(state)
    document = {
        "geometry": state_document(state),
        "pressures": {"P1": problem.P1, "P2": problem.P2, "P3": problem.P3},
        "volumes": {"w1": w1, "w2": w2},
        "energy": energy(state, problem.tensions),
        "residual": pressure_residuals(state, problem).max_abs,
    }
    return APIResponse(data=plain(document), meta=_meta(start))


@router.post("/oracle", response_model=APIResponse)
def oracle(request: OracleRequest):
    """Brute-force global minimum over an (x3, h) grid; keep grids small."""
    start = time.perf_counter()
    result = oracle_minimize(request.tensions, request.volumes, grid=request.grid)
    return APIResponse(data=plain(result.model_dump()), meta=_meta(start, result.grid))
