"""
Health Check Router

=== HEALTH CHECK TYPES ===

1. Liveness (/live)
   - "Is the process alive?"
   - Should be trivial; never touches the numerical stack

2. Readiness (/ready)
   - "Can the service answer solve requests?"
   - Solves the symmetric doublet and checks its 120 degree angles

3. Dependencies (/dependencies)
   - Installed versions of the numerical libraries
"""

import math
from datetime import datetime
from importlib import metadata

from fastapi import APIRouter, HTTPException

from api.schemas.base import HealthStatus
from config.logging_config import get_logger

logger = get_logger(__name__)

router = APIRouter()

NUMERICAL_STACK = ("numpy", "scipy", "sympy", "pydantic", "structlog")


@router.get("/")
async def health_check():
    return {
        "status": "healthy",
        "timestamp": datetime.utcnow().isoformat(),
        "service": "Doublet Equilibrium API",
        "version": "1.0.0",
    }


@router.get("/live")
async def liveness_check():
    return {"status": "alive", "timestamp": datetime.utcnow().isoformat()}


def _smoke_solve() -> bool:
    from src.geometry import ReducedVolumes, Tensions
    from src.solvers import solve_surface

    solution = solve_surface(Tensions.of(1, 1, 1), ReducedVolumes.of(0.5, 0.5))
    return all(
        abs(math.degrees(p) - 120.0) < 1e-6 for p in solution.state.interior_angles
    )


@router.get("/ready", response_model=HealthStatus)
def readiness_check():
    """
    Raises:
        HTTPException 503 if the stack cannot be imported or the smoke solve fails
    """
    checks = {}
    for name in NUMERICAL_STACK:
        try:
            __import__(name)
            checks[name] = True
        except ImportError:
            checks[name] = False
    try:
        checks["smoke_solve"] = _smoke_solve()
    except Exception as exc:
        logger.error("readiness_smoke_failed", error=str(exc))
        checks["smoke_solve"] = False

    if not all(checks.values()):
        raise HTTPException(
            status_code=503,
            detail={"status": "not_ready", "checks": checks},
        )
    return HealthStatus(status="ready", checks=checks)


@router.get("/dependencies")
async def dependency_check():
    versions = {}
    for name in NUMERICAL_STACK:
        try:
            versions[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            versions[name] = None
    return {"timestamp": datetime.utcnow().isoformat(), "dependencies": versions}
