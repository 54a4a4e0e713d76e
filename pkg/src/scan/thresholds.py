"""
Line-tension thresholds of the local-minimum region.

For equal volumes the region in the (t1, t2) plane

    is unbounded along t1 = t2    while kappa / w3^(1/3) < 3 t3 / 2
    is bounded                    beyond that
    disappears                    once kappa / w3^(1/3) exceeds ~12.17 t3

For unequal volumes no radical form is available and the threshold is
bracketed by bisection over scan outcomes.
"""
import math
from typing import Callable, Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from config.logging_config import get_logger
from src.errors import InvalidInputError, UnsupportedInputError
from src.geometry import ReducedVolumes
from src.scan.phase import scan_arrays
from src.solvers.feasibility import LemmaConstants, lemma_constants
from src.solvers.line import Classification

logger = get_logger(__name__)

__all__ = [
    "EqualVolumeThresholds",
    "LemmaConstants",
    "ThresholdBracket",
    "lemma_constants",
    "locate_threshold",
    "thresholds_equal_volumes",
]

ROOT65 = math.sqrt(65.0)


class EqualVolumeThresholds(BaseModel):
    kappa_bounded: float
    kappa_disappear: float
    t_singular: float

    model_config = ConfigDict(frozen=True)


def thresholds_equal_volumes(t3: float, volumes: ReducedVolumes) -> EqualVolumeThresholds:
    """
    Closed-form thresholds for w1 = w2.

    Raises:
        UnsupportedInputError: if w1 != w2
    """
    if not math.isclose(volumes.w1, volumes.w2, rel_tol=1e-12):
        raise UnsupportedInputError(
            "closed-form thresholds exist only for equal volumes; use locate_threshold",
            {"w1": volumes.w1, "w2": volumes.w2},
        )
    length = float(np.cbrt(volumes.w3))
    disappear = (
        (43.0 + 5.0 * ROOT65)
        * (25.0 * ROOT65 - 201.0) ** (1.0 / 6.0)
        / (4.0 * 14.0 ** (1.0 / 6.0))
    )
    return EqualVolumeThresholds(
        kappa_bounded=1.5 * t3 * length,
        kappa_disappear=disappear * t3 * length,
        t_singular=5.0 * t3 / 8.0 * (25.0 + 3.0 * ROOT65),
    )


def large_tension_predicate(t_large: float) -> Callable[[dict], bool]:
    """True when some LocalMin cell has max(t1, t2) >= t_large."""

    def predicate(cols: dict) -> bool:
        local_min = cols["class"] == Classification.LOCAL_MIN.value
        return bool(np.any(local_min & (np.maximum(cols["t1"], cols["t2"]) >= t_large)))

    return predicate


class ThresholdBracket(BaseModel):
    """predicate holds at kappa_lo and fails at kappa_hi; hi - lo <= tolerance."""

    kappa_lo: float
    kappa_hi: float
    tolerance: float
    evaluations: int

    model_config = ConfigDict(frozen=True)

    @property
    def estimate(self) -> float:
        return 0.5 * (self.kappa_lo + self.kappa_hi)


def locate_threshold(
    t3: float,
    kappa_lo: float,
    kappa_hi: float,
    volumes: ReducedVolumes,
    predicate: Optional[Callable[[dict], bool]] = None,
    tol: float = 1e-2,
    *,
    n: int = 128,
    t_large: float = 20.0,
) -> ThresholdBracket:
    """
    Bisect kappa on a scan predicate (default: a LocalMin cell with
    max(t1, t2) >= t_large exists).

    Raises:
        InvalidInputError: if the initial interval does not bracket a change
    """
    predicate = predicate or large_tension_predicate(t_large)

    def holds(kappa: float) -> bool:
        return predicate(scan_arrays(t3, kappa, volumes, n))

    evaluations = 2
    if not holds(kappa_lo) or holds(kappa_hi):
        raise InvalidInputError(
            "predicate must hold at kappa_lo and fail at kappa_hi",
            {"kappa_lo": kappa_lo, "kappa_hi": kappa_hi},
        )
    lo, hi = kappa_lo, kappa_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        evaluations += 1
        if holds(mid):
            lo = mid
        else:
            hi = mid
    logger.info("threshold_located", kappa_lo=lo, kappa_hi=hi, evaluations=evaluations)
    return ThresholdBracket(kappa_lo=lo, kappa_hi=hi, tolerance=tol, evaluations=evaluations)
