"""
Tension regimes and the force-triangle angle laws.

Without line tension the junction balance t1 e1 + t2 e2 + t3 e3 = 0 is a
triangle of forces. It closes only under the strict triangle inequalities
(2 max(t) < t_s); otherwise one interface vanishes and the minimizer is a
boundary configuration u_k.
"""
import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from src.errors import RegimeError, WrongSolverError
from src.geometry import Tensions, Triple

# relative slack under which an equality t_k = t_{k+1} + t_{k-1} is declared
EQUALITY_SLACK = 4.0 * 2.220446049250313e-16


class RegimeLabel(str, Enum):
    INTERIOR = "interior"
    INTERNALIZE_1 = "internalize-1"
    INTERNALIZE_2 = "internalize-2"
    EXTERNALIZE = "externalize"


_DEGENERATE_LABELS = {
    1: RegimeLabel.INTERNALIZE_1,
    2: RegimeLabel.INTERNALIZE_2,
    3: RegimeLabel.EXTERNALIZE,
}


class TensionRegime(BaseModel):
    """
    Which configuration family the surface tensions select.

    index is the violated k (the vanished interface is u_k); boundary is
    set in the equality case t_k = t_{k+1} + t_{k-1}.
    """

    label: RegimeLabel
    boundary: bool = False
    index: Optional[int] = Field(None, ge=1, le=3)

    model_config = ConfigDict(frozen=True)

    @property
    def interior(self) -> bool:
        return self.label is RegimeLabel.INTERIOR


def triangle_regime(t1: float, t2: float, t3: float) -> TensionRegime:
    """Classify a surface-tension triple, ignoring any line tension."""
    t = (t1, t2, t3)
    ts = t1 + t2 + t3
    k = max(range(3), key=lambda i: t[i])
    gap = ts - 2.0 * t[k]
    slack = EQUALITY_SLACK * ts
    if gap > slack:
        return TensionRegime(label=RegimeLabel.INTERIOR)
    return TensionRegime(
        label=_DEGENERATE_LABELS[k + 1], boundary=abs(gap) <= slack, index=k + 1
    )


def classify_regime(tensions: Tensions) -> TensionRegime:
    """
    Regime of a pure surface-tension problem.

    Raises:
        WrongSolverError: if kappa != 0 (use the line-tension solver)

    Example:
        >>> classify_regime(Tensions.of(3, 1, 1)).label
        <RegimeLabel.INTERNALIZE_1: 'internalize-1'>
    """
    if tensions.kappa != 0:
        raise WrongSolverError(
            "regime classification applies to kappa = 0; use the line-tension solver",
            {"kappa": tensions.kappa},
        )
    return triangle_regime(*tensions.surface)


class AngleLaws(BaseModel):
    """
    Junction angles implied by the force triangle.

    cos_phi, sin_phi: cosine / sine of the geometric angles phi_k in (0, pi)
    cot_half: y_k = cot(phi_k / 2)
    circumradius: R of the force triangle, so that t_k = 2 R sin(phi_k)
    """

    cos_phi: Triple
    sin_phi: Triple
    cot_half: Triple
    circumradius: float

    model_config = ConfigDict(frozen=True)

    @property
    def phi(self) -> Triple:
        return tuple(math.atan2(s, c) for s, c in zip(self.sin_phi, self.cos_phi))


def angle_laws(tensions: Tensions) -> AngleLaws:
    """
    Law of cosines, sines and cotangents for the tension triangle.

    Uses factored (Heron) forms so no difference of near-equal squares is
    formed. Only the surface tensions enter.

    Raises:
        RegimeError: unless the strict triangle inequalities hold
    """
    t1, t2, t3 = t = tensions.surface
    regime = triangle_regime(t1, t2, t3)
    if not regime.interior:
        raise RegimeError(
            f"angle laws need the interior regime, got {regime.label.value}",
            {"tensions": t},
        )
    heron = (t1 + t2 + t3) * (-t1 + t2 + t3) * (t1 - t2 + t3) * (t1 + t2 - t3)
    root = math.sqrt(heron)

    cos_phi, sin_phi, cot_half = [], [], []
    for k in range(3):
        tk, tp, tm = t[k], t[(k + 1) % 3], t[(k - 1) % 3]
        cos_phi.append(-(tp * tp + tm * tm - tk * tk) / (2.0 * tp * tm))
        sin_phi.append(root / (2.0 * tp * tm))
        cot_half.append(
            math.sqrt(((tk - tp + tm) * (tk + tp - tm)) / ((tp + tm - tk) * (tp + tm + tk)))
        )
    return AngleLaws(
        cos_phi=tuple(cos_phi),
        sin_phi=tuple(sin_phi),
        cot_half=tuple(cot_half),
        circumradius=t1 * t2 * t3 / root,
    )
