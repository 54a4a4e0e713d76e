"""
Core geometry of the cell doublet.

=== STRUCTURE ===

    src/geometry/
    ├── models.py   # Tensions, ReducedVolumes, DoubletState, BoundaryState, PressurePair
    └── caps.py     # conversions, volumes, energy, manifold charts, psi

The solvers, scans, inference and the oracle all build on these two
modules, which import nothing else from src except src.errors.
"""

from src.geometry.models import (
    BoundaryState,
    DoubletState,
    PressurePair,
    ReducedVolumes,
    Tensions,
    Triple,
)
from src.geometry.caps import (
    boundary_psi,
    cap_root,
    cubic_q,
    energy,
    energy_xh,
    manifold_x,
    parameterize_manifold,
    reduced_variables,
    state_from_xh,
    volumes,
    xh_from_state,
    young_laplace_pressures,
)

__all__ = [
    "BoundaryState",
    "DoubletState",
    "PressurePair",
    "ReducedVolumes",
    "Tensions",
    "Triple",
    "boundary_psi",
    "cap_root",
    "cubic_q",
    "energy",
    "energy_xh",
    "manifold_x",
    "parameterize_manifold",
    "reduced_variables",
    "state_from_xh",
    "volumes",
    "xh_from_state",
    "young_laplace_pressures",
]
