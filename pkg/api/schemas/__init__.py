"""
API Schemas Package - Pydantic Models

- base.py: response envelope shared by every endpoint
- doublet.py: request bodies for solve and analysis endpoints
"""

from api.schemas.base import APIResponse, ErrorDetail, ErrorResponse, HealthStatus, MetaInfo
from api.schemas.doublet import (
    AmbiguityRequest,
    BulgeBoundaryRequest,
    InferAnglesRequest,
    InferRadiiRequest,
    OracleRequest,
    ScanRequest,
    SolveVolumesRequest,
)

__all__ = [
    "APIResponse",
    "AmbiguityRequest",
    "BulgeBoundaryRequest",
    "ErrorDetail",
    "ErrorResponse",
    "HealthStatus",
    "InferAnglesRequest",
    "InferRadiiRequest",
    "MetaInfo",
    "OracleRequest",
    "ScanRequest",
    "SolveVolumesRequest",
]
