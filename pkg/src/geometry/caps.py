"""
Cap geometry: conversions, volumes, energy and constraint-manifold charts.

The volume constraints are cubic:

    w1 = -x1(3h^2 + x1^2) + x3(3h^2 + x3^2)
    w2 =  x2(3h^2 + x2^2) - x3(3h^2 + x3^2)

so for fixed (x3, h) each of x1, x2 solves z(z^2 + 3) = 2q, whose unique
real root is cap_root(q). That gives a global chart of the constraint
manifold M over (x3, h), and the limit h -> 0 a chart of its boundary
stratum M_0 over x3 alone.

Functions accept scalars or numpy arrays where noted; the vectorized
forms are what the oracle and the scans evaluate on grids.
"""
import math
from typing import Union

import numpy as np

from src.errors import InvalidInputError, UndefinedReducedVariableError
from src.geometry.models import (
    BoundaryState,
    DoubletState,
    PressurePair,
    ReducedVolumes,
    Tensions,
)

ArrayLike = Union[float, np.ndarray]


def cap_root(q: ArrayLike) -> ArrayLike:
    """
    Unique real root z of z(z^2 + 3) = 2q, i.e. Z(q) = 2 sinh(asinh(q) / 3).

    One Newton step on the cubic polishes the last bits; the cubic is
    strictly increasing so the step never changes the ordering of roots.

    Example:
        >>> cap_root(2.0)
        1.0
    """
    q = np.asarray(q, dtype=float)
    z = 2.0 * np.sinh(np.arcsinh(q) / 3.0)
    z = z - (z * (z * z + 3.0) - 2.0 * q) / (3.0 * (z * z + 1.0))
    return float(z) if z.ndim == 0 else z


def cubic_q(z: ArrayLike) -> ArrayLike:
    """q(z) = z(z^2 + 3), the cap volume polynomial in z-units."""
    return z * (z * z + 3.0)


def state_from_xh(x1: float, x2: float, x3: float, h: float) -> DoubletState:
    """
    Build the canonical state from apex positions and junction radius.

    Raises:
        InvalidInputError: if h <= 0 or the ordering x1 < x3 < x2 fails
    """
    if not (h > 0 and math.isfinite(h)):
        raise InvalidInputError(f"junction radius must be positive, got h={h}")
    if not (x1 < x3 < x2):
        raise InvalidInputError(f"apex ordering x1 < x3 < x2 violated: ({x1}, {x2}, {x3})")
    state = DoubletState(z1=x1 / h, z2=x2 / h, z3=x3 / h, y=1.0 / h)
    state._h = h
    return state


def xh_from_state(state: DoubletState) -> tuple[float, float, float, float]:
    x1, x2, x3 = state.x
    return x1, x2, x3, state.h


def volumes(state: DoubletState) -> tuple[float, float]:
    """Reduced volumes (w1, w2) enclosed by a state."""
    q1, q2, q3 = (cubic_q(z) for z in state.z)
    h3 = state.h**3
    return (q3 - q1) * h3, (q2 - q3) * h3


def energy_xh(
    x1: ArrayLike, x2: ArrayLike, x3: ArrayLike, h: ArrayLike, tensions: Tensions
) -> ArrayLike:
    """E = pi (t1 x1^2 + t2 x2^2 + t3 x3^2 + t_s h^2 + 2 kappa h)."""
    return math.pi * (
        tensions.t1 * x1 * x1
        + tensions.t2 * x2 * x2
        + tensions.t3 * x3 * x3
        + tensions.ts * h * h
        + 2.0 * tensions.kappa * h
    )


def energy(geometry: Union[DoubletState, BoundaryState, tuple], tensions: Tensions) -> float:
    """Energy of a state, a boundary state, or an (x1, x2, x3, h) tuple."""
    if isinstance(geometry, (DoubletState, BoundaryState)):
        x1, x2, x3 = geometry.x
        h = geometry.h
    else:
        x1, x2, x3, h = geometry
    return float(energy_xh(x1, x2, x3, h, tensions))


def manifold_x(
    x3: ArrayLike, h: ArrayLike, volumes: ReducedVolumes
) -> tuple[ArrayLike, ArrayLike]:
    """
    Lift (x3, h) onto the constraint manifold: returns (x1, x2).

    h = 0 is allowed and evaluates the boundary chart x_k = cbrt(x3^3 -+ w).
    """
    x3 = np.asarray(x3, dtype=float)
    h = np.asarray(h, dtype=float)
    base = x3 * (3.0 * h * h + x3 * x3)
    with np.errstate(divide="ignore", invalid="ignore"):
        h3 = 2.0 * h**3
        x1 = np.where(
            h > 0, h * cap_root(np.asarray((base - volumes.w1) / h3)), np.cbrt(base - volumes.w1)
        )
        x2 = np.where(
            h > 0, h * cap_root(np.asarray((base + volumes.w2) / h3)), np.cbrt(base + volumes.w2)
        )
    if x1.ndim == 0:
        return float(x1), float(x2)
    return x1, x2


def parameterize_manifold(x3: float, h: float, volumes: ReducedVolumes) -> DoubletState:
    """
    The state on the constraint manifold with interface apex x3 and junction radius h.

    Example:
        >>> s = parameterize_manifold(0.0, math.sqrt(3), ReducedVolumes(w1=54, w2=54))
        >>> [round(v, 12) for v in s.x]
        [-3.0, 3.0, 0.0]
    """
    if not h > 0:
        raise InvalidInputError(f"parameterize_manifold needs h > 0, got {h}")
    x1, x2 = manifold_x(x3, h, volumes)
    return state_from_xh(x1, x2, x3, h)


def boundary_psi(x: ArrayLike, tensions: Tensions, volumes: ReducedVolumes) -> ArrayLike:
    """
    Energy / pi on M_0 as a function of x = x3^3.

    psi(x) = t1 ((x - w1)^2)^(1/3) + t2 ((x + w2)^2)^(1/3) + t3 (x^2)^(1/3)

    Concave between the kinks -w2, 0, w1 and infinitely steep at them.
    """
    x = np.asarray(x, dtype=float)
    psi = (
        tensions.t1 * np.cbrt((x - volumes.w1) ** 2)
        + tensions.t2 * np.cbrt((x + volumes.w2) ** 2)
        + tensions.t3 * np.cbrt(x * x)
    )
    return float(psi) if psi.ndim == 0 else psi


def reduced_variables(
    tensions: Tensions, volumes: ReducedVolumes
) -> tuple[float, float, float, float]:
    """
    Scale-free parameters (w, tau1, tau2, tau3).

    w = (w2 - w1) / w3 and tau_k = t_k w3^(1/3) / kappa; (tau, w) fix the
    dimensionless geometry (z, rho = y w3^(1/3)).
    """
    if tensions.kappa == 0:
        raise UndefinedReducedVariableError("tau is undefined without line tension")
    scale = np.cbrt(volumes.w3) / tensions.kappa
    w = (volumes.w2 - volumes.w1) / volumes.w3
    return w, tensions.t1 * scale, tensions.t2 * scale, tensions.t3 * scale


def young_laplace_pressures(state: DoubletState, tensions: Tensions) -> PressurePair:
    """P1 = -2 t1 / r1 and P2 = 2 t2 / r2 evaluated without dividing by s_k."""
    s1, s2, _ = state.s
    return PressurePair(
        P1=-2.0 * tensions.t1 * s1 * state.y, P2=2.0 * tensions.t2 * s2 * state.y
    )
