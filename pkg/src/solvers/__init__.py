"""
Equilibrium solvers for the doublet.

=== STRUCTURE ===

    src/solvers/
    ├── regime.py       # triangle regimes, angle laws
    ├── quintic.py      # pivot quintic, monotone reparameterization, Sturm count
    ├── surface.py      # kappa = 0, volumes prescribed; boundary points u_k
    ├── pressure.py     # kappa = 0, pressures prescribed
    ├── feasibility.py  # necessary conditions with line tension
    └── line.py         # forward map, multistart Newton, Hessian, global minimum

=== USAGE ===

    from src.geometry import Tensions, ReducedVolumes
    from src.solvers import solve_surface, global_minimum

    sol = solve_surface(Tensions.of(1, 1, 1), ReducedVolumes.of(0.5, 0.5))
    res = global_minimum(Tensions.of(5, 6, 4, kappa=1), ReducedVolumes.of(0.75, 0.25))
"""

from src.solvers.feasibility import (
    FeasibilityReport,
    LemmaConstants,
    check_point_inequalities,
    feasibility_prefilter,
    lemma_constants,
)
from src.solvers.line import (
    Classification,
    CriticalPoint,
    ForwardImage,
    GlobalResult,
    RelationReport,
    classify,
    classify_arrays,
    find_critical_points,
    forward_map,
    forward_map_arrays,
    global_minimum,
    hessian_tangent,
    make_critical_point,
    relation_checks,
    residual,
    tangent_invariants,
)
from src.solvers.pressure import (
    PressureProblem,
    discriminant_delta,
    pressure_residuals,
    rejected_branch,
    solve_pressure,
)
from src.solvers.quintic import build_quintic, real_root_count, solve_monotone
from src.solvers.regime import (
    AngleLaws,
    RegimeLabel,
    TensionRegime,
    angle_laws,
    classify_regime,
)
from src.solvers.surface import (
    BoundaryHessian,
    SurfaceSolution,
    boundary_critical_points,
    boundary_energies,
    boundary_hessian,
    degenerate_configuration,
    solve_surface,
    surface_residuals,
)

__all__ = [
    "AngleLaws",
    "BoundaryHessian",
    "Classification",
    "CriticalPoint",
    "FeasibilityReport",
    "ForwardImage",
    "GlobalResult",
    "LemmaConstants",
    "PressureProblem",
    "RegimeLabel",
    "RelationReport",
    "SurfaceSolution",
    "TensionRegime",
    "angle_laws",
    "boundary_critical_points",
    "boundary_energies",
    "boundary_hessian",
    "build_quintic",
    "check_point_inequalities",
    "classify",
    "classify_arrays",
    "classify_regime",
    "degenerate_configuration",
    "discriminant_delta",
    "feasibility_prefilter",
    "find_critical_points",
    "forward_map",
    "forward_map_arrays",
    "global_minimum",
    "hessian_tangent",
    "lemma_constants",
    "make_critical_point",
    "pressure_residuals",
    "real_root_count",
    "rejected_branch",
    "relation_checks",
    "residual",
    "solve_monotone",
    "solve_pressure",
    "solve_surface",
    "surface_residuals",
    "tangent_invariants",
]
