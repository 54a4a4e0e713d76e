"""
Doublet Request Schemas

Request bodies for the solve and analysis endpoints.

=== REUSING DOMAIN MODELS ===

Tensions, ReducedVolumes and PressureProblem are already pydantic models
with their own constraints (positive tensions, kappa >= 0, finite numbers),
so requests embed them directly instead of redeclaring the fields:

    POST /api/v1/solve/volumes
    {"tensions": {"t1": 5, "t2": 6, "t3": 4, "kappa": 1},
     "volumes": {"w1": 0.75, "w2": 0.25}}

A body that violates them never reaches the solver: FastAPI answers 422.
"""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from src.geometry import ReducedVolumes, Tensions


class SolveVolumesRequest(BaseModel):
    """Volume-prescribed solve; kappa > 0 switches to the line-tension solver."""

    tensions: Tensions
    volumes: ReducedVolumes
    newton_grid: Optional[int] = Field(
        None, ge=2, le=128, description="Multistart grid per axis (line tension only)"
    )

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "tensions": {"t1": 5.0, "t2": 6.0, "t3": 4.0, "kappa": 1.0},
                "volumes": {"w1": 0.75, "w2": 0.25},
            }
        }
    )


class OracleRequest(BaseModel):
    tensions: Tensions
    volumes: ReducedVolumes
    grid: Optional[int] = Field(None, ge=2, le=400, description="Oracle grid per axis")


class ScanRequest(BaseModel):
    """Angle-grid scan; n is capped by the api_max_scan_grid setting."""

    t3: float = Field(..., gt=0, allow_inf_nan=False)
    kappa: float = Field(..., ge=0, allow_inf_nan=False)
    volumes: ReducedVolumes
    n: int = Field(64, ge=2)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"t3": 1.0, "kappa": 0.1, "volumes": {"w1": 0.5, "w2": 0.5}, "n": 64}
        }
    )


class BulgeBoundaryRequest(BaseModel):
    t2: float = Field(..., gt=0, allow_inf_nan=False)
    t3: float = Field(..., gt=0, allow_inf_nan=False)
    kappa: float = Field(..., gt=0, allow_inf_nan=False)
    volumes: ReducedVolumes

    model_config = ConfigDict(
        json_schema_extra={
            "example": {"t2": 1.25, "t3": 1.0, "kappa": 0.1, "volumes": {"w1": 0.5, "w2": 0.5}}
        }
    )


class InferAnglesRequest(BaseModel):
    """Interior junction angles in degrees, summing to 360."""

    phi_deg: tuple[float, float, float]
    law: Literal[
        "sine", "perimeter-sine", "perimeter-cosine", "half-angle", "cotangent", "all"
    ] = "all"

    model_config = ConfigDict(
        json_schema_extra={"example": {"phi_deg": [120.0, 120.0, 120.0], "law": "all"}}
    )


class InferRadiiRequest(BaseModel):
    """Signed cap radii and centre positions; null marks a flat cap."""

    radii: tuple[Optional[float], Optional[float], Optional[float]]
    centers: tuple[Optional[float], Optional[float], Optional[float]]
    h: float = Field(..., gt=0, allow_inf_nan=False)


class AmbiguityRequest(BaseModel):
    """Family of tensions for the LocalMin of (tensions, volumes); checks one member."""

    tensions: Tensions
    volumes: ReducedVolumes
    lam: float = Field(1.0, allow_inf_nan=False)
    mu: float = Field(0.0, allow_inf_nan=False)
