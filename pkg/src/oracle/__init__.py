"""
Independent brute-force minimizer used to validate the solvers.

Depends on src.geometry only; nothing here may import from src.solvers.
"""

from src.oracle.brute_force import (
    BoundaryCandidate,
    BoundaryScan,
    InteriorCandidate,
    OracleResult,
    boundary_scan,
    oracle_minimize,
)

__all__ = [
    "BoundaryCandidate",
    "BoundaryScan",
    "InteriorCandidate",
    "OracleResult",
    "boundary_scan",
    "oracle_minimize",
]
