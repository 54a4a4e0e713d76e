"""
Doublet for prescribed pressures (no line tension).

The Young-Laplace laws P_k = 4 t_k x_k / (h^2 + x_k^2) (signed per cap) make
each apex a root of a quadratic whose two roots multiply to h^2, and the
cosine balance fixes h in closed form:

    h^2 = (t1+t2+t3)(t2+t3-t1)(t3+t1-t2)(t1+t2-t3) / Delta^2
    Delta^2 = (P1 t2 - P2 t1)^2 + P1 P2 (t1-t2+t3)(t2-t1+t3)

Of the two candidate triples only x^- keeps x1 < x3 < x2 and is continuous
as P1 -> P2. Each coordinate is evaluated in whichever Vieta form avoids
cancellation.
"""
import math

from pydantic import BaseModel, ConfigDict, Field

from config.logging_config import get_logger
from src.errors import NoConfigurationError, WrongSolverError
from src.geometry import DoubletState, Tensions, Triple, state_from_xh
from src.solvers.regime import triangle_regime

logger = get_logger(__name__)

# below this |P3| / max(P1, P2) the interface apex uses its small-root limit
FLAT_INTERFACE_RATIO = 1e-8


class PressureProblem(BaseModel):
    tensions: Tensions
    P1: float = Field(..., gt=0, allow_inf_nan=False)
    P2: float = Field(..., gt=0, allow_inf_nan=False)

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"tensions": {"t1": 1, "t2": 1, "t3": 1}, "P1": 1.0, "P2": 1.0}
        },
    )

    @property
    def P3(self) -> float:
        return self.P1 - self.P2


def _check(problem: PressureProblem) -> None:
    t = problem.tensions
    if t.kappa != 0:
        raise WrongSolverError(
            "pressure-prescribed solve has no line-tension variant", {"kappa": t.kappa}
        )
    regime = triangle_regime(*t.surface)
    if not regime.interior:
        raise NoConfigurationError(
            "no doublet exists for these tensions at prescribed pressures",
            {"tensions": t.surface, "regime": regime.label.value},
        )


def discriminant_delta(tensions: Tensions, P1: float, P2: float) -> float:
    t1, t2, t3 = tensions.surface
    return math.sqrt(
        (P1 * t2 - P2 * t1) ** 2 + P1 * P2 * (t1 - t2 + t3) * (t2 - t1 + t3)
    )


def _junction_radius(t: Triple, delta: float) -> float:
    t1, t2, t3 = t
    heron = (t1 + t2 + t3) * (t2 + t3 - t1) * (t3 + t1 - t2) * (t1 + t2 - t3)
    return math.sqrt(heron) / delta


def _signed_roots(problem: PressureProblem) -> tuple[float, Triple, Triple]:
    """h and the shifts a_k = N_k / Delta of the three quadratics."""
    t1, t2, t3 = problem.tensions.surface
    P1, P2 = problem.P1, problem.P2
    delta = discriminant_delta(problem.tensions, P1, P2)
    h = _junction_radius((t1, t2, t3), delta)
    a = (
        (P1 * (t1 * t1 + t2 * t2 - t3 * t3) - 2.0 * P2 * t1 * t1) / delta,
        (P2 * (t1 * t1 + t2 * t2 - t3 * t3) - 2.0 * P1 * t2 * t2) / delta,
        (P1 * (t2 * t2 + t3 * t3 - t1 * t1) + P2 * (t1 * t1 + t3 * t3 - t2 * t2)) / delta,
    )
    return h, a, (t1, t2, t3)


def _root(two_t: float, a: float, P: float, h2: float, sign: int) -> float:
    """(two_t + sign a) / P, or the equivalent P h^2 / (two_t - sign a)."""
    shifted = two_t + sign * a
    conjugate = two_t - sign * a
    if abs(shifted) >= abs(conjugate):
        return shifted / P
    return P * h2 / conjugate


def _branch(problem: PressureProblem, sign: int) -> tuple[float, float, float, float]:
    h, a, t = _signed_roots(problem)
    h2 = h * h
    P1, P2, P3 = problem.P1, problem.P2, problem.P3
    x1 = -_root(2.0 * t[0], a[0], P1, h2, sign)
    x2 = _root(2.0 * t[1], a[1], P2, h2, sign)
    if sign < 0 and abs(P3) < FLAT_INTERFACE_RATIO * max(P1, P2):
        x3 = P3 * h2 / (4.0 * t[2])
    elif P3 == 0.0:
        x3 = math.inf
    else:
        x3 = _root(2.0 * t[2], a[2], P3, h2, sign)
    return x1, x2, x3, h


def solve_pressure(problem: PressureProblem) -> DoubletState:
    """
    The unique doublet with pressures (P1, P2).

    Raises:
        NoConfigurationError: tensions violate a strict triangle inequality
        WrongSolverError: tensions carry a line tension
    """
    _check(problem)
    x1, x2, x3, h = _branch(problem, -1)
    logger.debug("pressure_solved", x=(x1, x2, x3), h=h)
    return state_from_xh(x1, x2, x3, h)


def rejected_branch(problem: PressureProblem) -> tuple[float, float, float, float]:
    """The x^+ triple and h; diagnostics only, it never satisfies x1 < x3 < x2."""
    _check(problem)
    return _branch(problem, 1)


class PressureResiduals(BaseModel):
    """
    young_laplace: (P1 + 2 t1 s1 y, P2 - 2 t2 s2 y) / max(P)
    curvature_sum: (t1/r1 + t2/r2 + t3/r3) / (max(t) y)
    cosine: sum t_k c_k / max(t)
    """

    young_laplace: tuple[float, float]
    curvature_sum: float
    cosine: float

    model_config = ConfigDict(frozen=True)

    @property
    def max_abs(self) -> float:
        return max(abs(self.young_laplace[0]), abs(self.young_laplace[1]),
                   abs(self.curvature_sum), abs(self.cosine))


def pressure_residuals(state: DoubletState, problem: PressureProblem) -> PressureResiduals:
    t = problem.tensions.surface
    s, c, y = state.s, state.c, state.y
    p_scale = max(problem.P1, problem.P2)
    t_scale = max(t)
    return PressureResiduals(
        young_laplace=(
            (problem.P1 + 2.0 * t[0] * s[0] * y) / p_scale,
            (problem.P2 - 2.0 * t[1] * s[1] * y) / p_scale,
        ),
        curvature_sum=sum(tk * sk for tk, sk in zip(t, s)) / t_scale,
        cosine=sum(tk * ck for tk, ck in zip(t, c)) / t_scale,
    )
