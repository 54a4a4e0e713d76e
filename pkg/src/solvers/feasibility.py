"""
Necessary conditions for interior critical points with line tension.

With q_k = z_k(z_k^2 + 3) one has c_k = f(q_k / 2) where

    f(x) = 2 cosh(asinh(x) / 3) / sqrt(x^2 + 1) - 1

is even, positive on (-2, 2) and decreasing on x > 0. Since |q_k| <= w3 y^3
the cosine balance gives t_s f(w3 y^3 / 2) + kappa y <= 0, hence:

    y >= 4^(1/3) / w3^(1/3)
    u = (t_s / kappa) (w3 / 2)^(1/3) >= 1 / M > 3

with M the maximum of g(x) = -f(x^3) / x, attained at omega0.
"""
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict
from scipy.optimize import minimize_scalar

from src.geometry import DoubletState, ReducedVolumes, Tensions

# the classical (weaker) form of the u bound
U_CLASSICAL = 3.0


def cosine_profile(x):
    """f(x) = 2 cosh(asinh(x)/3) / sqrt(x^2 + 1) - 1."""
    x = np.asarray(x, dtype=float)
    return 2.0 * np.cosh(np.arcsinh(x) / 3.0) / np.sqrt(x * x + 1.0) - 1.0


def _g(x: float) -> float:
    return float(-cosine_profile(x**3) / x)


class LemmaConstants(BaseModel):
    """Closed forms of omega0 and M, with the numerically maximized values beside them."""

    omega0: float
    M: float
    omega0_numeric: float
    M_numeric: float

    model_config = ConfigDict(frozen=True)


def _omega0_closed_form() -> float:
    root778 = math.sqrt(778.0)
    inner = math.acos(50115.0 * math.sqrt(3.0) / (3112.0 * root778)) / 3.0
    return (32.0 + 4.0 * root778 / math.sqrt(3.0) * math.cos(inner)) ** (1.0 / 6.0)


def _m_closed_form() -> float:
    arg = 101454517.0 / (8.0 * 5.0**1.5 * 10883.0**1.5)
    radical = (
        2.0 * math.sqrt(5.0) * math.sqrt(10883.0) * math.cos(math.acos(arg) / 3.0 - math.pi / 3.0)
        - 239.0
    )
    return (4.0 / 3.0) ** (1.0 / 6.0) * radical ** (1.0 / 6.0)


def lemma_constants() -> LemmaConstants:
    """
    omega0 ~ 2.1414 and M ~ 0.3217.

    The numeric pair comes from a bounded 1-D maximization of g over
    (2^(1/3), 8); g < 0 below 2^(1/3) so the maximum cannot lie there.
    """
    found = minimize_scalar(
        lambda x: -_g(x),
        bounds=(2.0 ** (1.0 / 3.0), 8.0),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return LemmaConstants(
        omega0=_omega0_closed_form(),
        M=_m_closed_form(),
        omega0_numeric=float(found.x),
        M_numeric=float(-found.fun),
    )


class DominantTensionCheck(BaseModel):
    """For t_k >= t_{k+1} + t_{k-1}: t_{k+1} + t_{k-1} >= t_s cosh(asinh(u^3)/3) / sqrt(u^6+1)."""

    k: int
    lhs: float
    rhs: float

    model_config = ConfigDict(frozen=True)

    @property
    def satisfied(self) -> bool:
        return self.lhs >= self.rhs


class FeasibilityReport(BaseModel):
    """
    u is None without line tension (the u conditions are vacuous then);
    y_min applies to every interior critical point regardless.
    """

    u: Optional[float]
    u_at_least_three: bool
    sharp_bound: float
    sharp_feasible: bool
    y_min: float
    dominant: list[DominantTensionCheck]

    model_config = ConfigDict(frozen=True)

    @property
    def feasible(self) -> bool:
        return (
            self.u_at_least_three
            and self.sharp_feasible
            and all(check.satisfied for check in self.dominant)
        )


def feasibility_prefilter(tensions: Tensions, volumes: ReducedVolumes) -> FeasibilityReport:
    """
    Evaluate the necessary conditions before any search.

    Example:
        >>> feasibility_prefilter(Tensions.of(1, 1, 1, 0.1), ReducedVolumes.of(0.5, 0.5)).u
        23.81...
    """
    w3 = volumes.w3
    y_min = float(np.cbrt(4.0 / w3))
    sharp = 1.0 / _m_closed_form()
    if tensions.kappa == 0:
        return FeasibilityReport(
            u=None,
            u_at_least_three=True,
            sharp_bound=sharp,
            sharp_feasible=True,
            y_min=y_min,
            dominant=[],
        )

    u = tensions.ts / tensions.kappa * float(np.cbrt(w3 / 2.0))
    t = tensions.surface
    dominant = []
    for k in range(3):
        others = t[(k + 1) % 3] + t[(k - 1) % 3]
        if t[k] >= others:
            u3 = u**3
            rhs = tensions.ts * math.cosh(math.asinh(u3) / 3.0) / math.sqrt(u3 * u3 + 1.0)
            dominant.append(DominantTensionCheck(k=k + 1, lhs=others, rhs=rhs))

    return FeasibilityReport(
        u=u,
        u_at_least_three=u >= U_CLASSICAL,
        sharp_bound=sharp,
        sharp_feasible=u >= sharp,
        y_min=y_min,
        dominant=dominant,
    )


class PointInequalities(BaseModel):
    """Slacks that must be nonnegative at any interior critical point."""

    quadrilateral: float
    y_bound: float

    model_config = ConfigDict(frozen=True)

    def satisfied(self, slack: float = 1e-9) -> bool:
        return self.quadrilateral >= -slack and self.y_bound >= -slack


def check_point_inequalities(
    state: DoubletState, tensions: Tensions, volumes: ReducedVolumes
) -> PointInequalities:
    """
    quadrilateral: (t_s + kappa y - 2 max(t1, t2, t3, kappa y)) / (t_s + kappa y)
    y_bound: (y - y_min) / y_min
    """
    ky = tensions.kappa * state.y
    total = tensions.ts + ky
    y_min = float(np.cbrt(4.0 / volumes.w3))
    return PointInequalities(
        quadrilateral=(total - 2.0 * max(*tensions.surface, ky)) / total,
        y_bound=(state.y - y_min) / y_min,
    )
