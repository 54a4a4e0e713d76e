"""
Analysis Router

Parameter-space scans and tension inference.

=== ENDPOINTS ===

    POST /scan            angle-grid phase scan (grid capped by settings)
    POST /bulge-boundary  configurations with sin phi1 = 0
    POST /infer/angles    angle laws, no line tension
    POST /infer/radii     radius law, no line tension
    POST /ambiguity       (lambda, mu) family at a line-tension LocalMin
"""

import math
import time
from typing import Optional

from fastapi import APIRouter

from api.schemas.base import APIResponse, MetaInfo
from api.schemas.doublet import (
    AmbiguityRequest,
    BulgeBoundaryRequest,
    InferAnglesRequest,
    InferRadiiRequest,
    ScanRequest,
)
from config.settings import get_settings
from src.cli.output import plain, state_document
from src.errors import InvalidInputError
from src.inference import ANGLE_LAWS, ambiguity_family, infer_from_angles, infer_from_radii
from src.scan import CSV_COLUMNS, bulge_boundary_solve, scan_angle_grid
from src.solvers import global_minimum

router = APIRouter()


def _meta(start: float, grid: Optional[int] = None) -> MetaInfo:
    return MetaInfo(processing_time_ms=int((time.perf_counter() - start) * 1000), grid=grid)


@router.post("/scan", response_model=APIResponse)
def scan(request: ScanRequest):
    """
    Phase scan over (alpha1, alpha2).

    Rows follow the CSV column order; large grids belong to the CLI.
    """
    limit = get_settings().api_max_scan_grid
    if request.n > limit:
        raise InvalidInputError(f"scan grid {request.n} exceeds the API limit {limit}")
    start = time.perf_counter()
    cells = scan_angle_grid(request.t3, request.kappa, request.volumes, request.n)
    data = {"columns": list(CSV_COLUMNS), "rows": [list(cell.row()) for cell in cells]}
    return APIResponse(data=plain(data), meta=_meta(start, request.n))


@router.post("/bulge-boundary", response_model=APIResponse)
def bulge_boundary(request: BulgeBoundaryRequest):
    start = time.perf_counter()
    points = bulge_boundary_solve(request.t2, request.t3, request.kappa, request.volumes)
    data = [
        {
            "t1": p.t1,
            "branch": p.branch,
            "geometry": state_document(p.state),
            "residual": p.residual,
            "hessian": {"trace": p.hessian_trace, "det": p.hessian_det},
            "classification": p.classification.value,
        }
        for p in points
    ]
    return APIResponse(data=plain(data), meta=_meta(start))


@router.post("/infer/angles", response_model=APIResponse)
def infer_angles(request: InferAnglesRequest):
    laws = ANGLE_LAWS if request.law == "all" else (request.law,)
    phi = [math.radians(p) for p in request.phi_deg]
    data = [infer_from_angles(*phi, law=law).model_dump() for law in laws]
    return APIResponse(data=data)


@router.post("/infer/radii", response_model=APIResponse)
def infer_radii(request: InferRadiiRequest):
    result = infer_from_radii(*request.radii, *request.centers, request.h)
    return APIResponse(data=result.model_dump())


@router.post("/ambiguity", response_model=APIResponse)
def ambiguity(request: AmbiguityRequest):
    """
    Every (lambda, mu) member balances the same junction; the check reports
    whether the chosen member keeps tensions positive and the Hessian test.
    """
    start = time.perf_counter()
    result = global_minimum(request.tensions, request.volumes)
    if not result.local_minima:
        raise InvalidInputError("no local minimum to build the ambiguity family from")
    family = ambiguity_family(result.local_minima[0], request.tensions)
    data = {
        "geometry": state_document(family.state),
        "direction": list(family.direction),
        "lami_member": list(family.lami_member()),
        "mu_interval": list(family.mu_interval(request.lam)),
        "member": family.check(request.lam, request.mu).model_dump(),
    }
    return APIResponse(data=plain(data), meta=_meta(start, get_settings().newton_grid))
