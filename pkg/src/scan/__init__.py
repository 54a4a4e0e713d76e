"""
Parameter-space analysis built on the line-tension forward map.

=== STRUCTURE ===

    src/scan/
    ├── phase.py       # angle-grid scan -> PhaseCell records
    ├── thresholds.py  # equal-volume closed forms, bisection for the rest
    └── bulging.py     # sin phi1 = 0 boundary, widest bulge
"""

from src.scan.bulging import (
    BulgeBoundaryPoint,
    WidestBulge,
    bulge_boundary_solve,
    max_bulge_probe,
)
from src.scan.phase import CSV_COLUMNS, PhaseCell, scan_angle_grid, scan_arrays
from src.scan.thresholds import (
    EqualVolumeThresholds,
    ThresholdBracket,
    lemma_constants,
    locate_threshold,
    thresholds_equal_volumes,
)

__all__ = [
    "BulgeBoundaryPoint",
    "CSV_COLUMNS",
    "EqualVolumeThresholds",
    "WidestBulge",
    "PhaseCell",
    "ThresholdBracket",
    "bulge_boundary_solve",
    "lemma_constants",
    "locate_threshold",
    "max_bulge_probe",
    "scan_angle_grid",
    "scan_arrays",
    "thresholds_equal_volumes",
]
