"""
Non-uniqueness of tension inference with line tension.

At a fixed geometry both force balances are linear in (t1, t2, t3, kappa),
and the three unit tangents satisfy sum_k sin(phi_k) e_k = 0. Every

    t_hat = lambda t + mu sin(phi),    kappa_hat = lambda kappa

therefore balances the same junction. The lambda = 0 member drops the
line tension altogether: those are the pure surface tensions that produce
the observed angles.
"""
import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from config.logging_config import get_logger
from src.errors import InvalidInputError
from src.geometry import DoubletState, Tensions
from src.solvers.line import Classification, CriticalPoint, classify, hessian_tangent

logger = get_logger(__name__)


class MemberCheck(BaseModel):
    """
    One (lambda, mu) member evaluated at the frozen geometry.

    trace/det are None when some tension is not positive; local_min_possible
    is the necessary test on the tangent Hessian, not a certificate.
    """

    lam: float
    mu: float
    tensions: tuple[float, float, float, float]
    positive: bool
    force_residual: float
    hessian_trace: float | None = None
    hessian_det: float | None = None
    local_min_possible: bool = False

    model_config = ConfigDict(frozen=True)


class AmbiguityFamily(BaseModel):
    base: Tensions
    state: DoubletState
    direction: tuple[float, float, float, float]

    model_config = ConfigDict(frozen=True)

    def member(self, lam: float, mu: float) -> tuple[float, float, float, float]:
        """(t1, t2, t3, kappa) for the given (lambda, mu); not checked for sign."""
        t1, t2, t3, kappa = self.base.t1, self.base.t2, self.base.t3, self.base.kappa
        d = self.direction
        return (lam * t1 + mu * d[0], lam * t2 + mu * d[1], lam * t3 + mu * d[2], lam * kappa)

    def mu_interval(self, lam: float) -> tuple[float, float]:
        """
        Open interval of mu keeping every t_hat positive for this lambda.

        Bounds may be infinite; lo >= hi means the interval is empty.
        """
        lo, hi = -math.inf, math.inf
        for t, s in zip(self.base.surface, self.direction[:3]):
            if s > 0:
                lo = max(lo, -lam * t / s)
            elif s < 0:
                hi = min(hi, lam * t / -s)
            elif lam * t <= 0:
                return (math.inf, -math.inf)
        return (lo, hi)

    def force_residual(self, lam: float, mu: float) -> float:
        """Both force balances at the frozen geometry, scaled by max |t_hat|."""
        t1, t2, t3, kappa = self.member(lam, mu)
        t = np.array([t1, t2, t3])
        c = np.array(self.state.c)
        s = np.array(self.state.s)
        scale = max(np.max(np.abs(t)), 1e-300)
        return float(
            max(abs(np.dot(t, c) + kappa * self.state.y), abs(np.dot(t, s))) / scale
        )

    def check(self, lam: float, mu: float) -> MemberCheck:
        values = self.member(lam, mu)
        positive = all(v > 0 for v in values[:3]) and values[3] >= 0
        residual = self.force_residual(lam, mu)
        if not positive:
            return MemberCheck(
                lam=lam, mu=mu, tensions=values, positive=False, force_residual=residual
            )
        tensions = Tensions.of(*values)
        trace, det = hessian_tangent(self.state, tensions)
        verdict = classify(trace, det, tensions.ts)
        return MemberCheck(
            lam=lam,
            mu=mu,
            tensions=values,
            positive=True,
            force_residual=residual,
            hessian_trace=trace,
            hessian_det=det,
            local_min_possible=verdict is Classification.LOCAL_MIN,
        )

    def lami_member(self) -> tuple[float, float, float]:
        """The lambda = 0 member scaled to t_s = 1 (kappa_hat = 0)."""
        d = self.direction[:3]
        total = sum(d)
        return tuple(v / total for v in d)


def ambiguity_family(point: CriticalPoint, tensions: Tensions) -> AmbiguityFamily:
    """
    The two-parameter family of tensions equilibrating point.state.

    Raises:
        InvalidInputError: point is not a LocalMin
    """
    if not point.is_local_min:
        raise InvalidInputError(
            f"ambiguity family needs a LocalMin, got {point.classification.value}"
        )
    state = point.state
    direction = (*(math.sin(p) for p in state.phi), 0.0)
    family = AmbiguityFamily(base=tensions, state=state, direction=direction)
    logger.debug("ambiguity_family", direction=direction, lami=family.lami_member())
    return family
