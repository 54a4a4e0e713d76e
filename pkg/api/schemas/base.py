"""
Response envelope shared by every endpoint.

    success  {"success": true,  "data": ..., "meta": {...}}
    failure  {"success": false, "error": {"code", "message", "detail", "path"}}

Numbers inside `data` are plain JSON floats; values that are not finite
(an unbounded mu interval, say) are sent as null.
"""

from datetime import datetime
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field


class ErrorDetail(BaseModel):
    """detail is the domain exception class, or the validation errors."""

    code: int = Field(..., description="HTTP status code")
    message: str = Field(..., description="What was rejected and why")
    detail: Optional[Any] = Field(None, description="Exception name or validation details")
    path: Optional[str] = Field(None, description="Request path")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "code": 422,
                "message": "no doublet exists for these tensions at prescribed pressures",
                "detail": "NoConfigurationError",
                "path": "/api/v1/solve/pressures",
            }
        }
    )


class ErrorResponse(BaseModel):
    success: bool = False
    error: ErrorDetail


class MetaInfo(BaseModel):
    """Wall time of the numerical work and the grid it ran on."""

    processing_time_ms: Optional[int] = Field(None, description="Solver wall time")
    grid: Optional[int] = Field(
        None, description="Multistart, scan or oracle grid per axis, when one was used"
    )
    timestamp: datetime = Field(default_factory=datetime.utcnow)
    version: str = "1.0.0"


class APIResponse(BaseModel):
    """
    Example:
        {
            "success": true,
            "data": {"global": "interior", "energy": 3.744, ...},
            "meta": {"processing_time_ms": 12, "grid": null}
        }
    """

    success: bool = True
    data: Optional[Any] = Field(None, description="Shape varies by endpoint")
    meta: Optional[MetaInfo] = None


class HealthStatus(BaseModel):
    status: str = Field(..., description="ready or not_ready")
    timestamp: datetime = Field(default_factory=datetime.utcnow)
    checks: Optional[dict[str, bool]] = Field(None, description="Import and smoke-solve checks")
