"""
Tension inference from observed geometry (no line tension).

Angle laws need the interior junction angles phi_k in (0, pi) summing to
2 pi and return tensions normalized to t_s = 1; every law is an exact
rearrangement of the same force triangle, so all of them agree.

The radius law works from the cap radii r_k and the axial positions C_k of
the sphere centres: t_k is proportional to |r_k| |C_{k+1} - C_{k-1}|.
"""
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict

from src.errors import InvalidInputError
from src.geometry import DoubletState

AngleLaw = Literal["sine", "perimeter-sine", "perimeter-cosine", "half-angle", "cotangent"]
ANGLE_LAWS: tuple[str, ...] = (
    "sine",
    "perimeter-sine",
    "perimeter-cosine",
    "half-angle",
    "cotangent",
)
ANGLE_SUM_TOLERANCE = 1e-9


class InferenceResult(BaseModel):
    """
    Tensions up to scale.

    normalization: "sum" (t_s = 1), "t3" (t3 = 1) or "t2" (partial result, t3 unknown)
    conditioning: smallest sin(phi_k); small values amplify angle errors
    """

    tensions: tuple[float, float, Optional[float]]
    law: str
    normalization: Literal["sum", "t3", "t2"]
    conditioning: float
    note: Optional[str] = None

    model_config = ConfigDict(frozen=True)


def _check_angles(phi: tuple[float, float, float]) -> None:
    for k, p in enumerate(phi, start=1):
        if not (0.0 < p < math.pi):
            raise InvalidInputError(
                f"phi{k} = {math.degrees(p):.6f} deg is outside (0, 180); "
                "angle laws do not apply to bulged junctions",
                {"phi": phi},
            )
    total = sum(phi)
    if abs(total - 2.0 * math.pi) > ANGLE_SUM_TOLERANCE:
        raise InvalidInputError(
            f"junction angles must sum to 360 deg, got {math.degrees(total):.9f}",
            {"phi": phi},
        )


def _cyclic(values, k):
    return values[k], values[(k + 1) % 3], values[(k - 1) % 3]


def _sine(phi):
    return [math.sin(p) for p in phi]


def _perimeter_sine(phi):
    s = [math.sin(p) for p in phi]
    beta = (
        (s[0] + s[1] - s[2]) * (s[1] + s[2] - s[0]) * (s[2] + s[0] - s[1])
    ) / (s[0] * s[1] * s[2])
    out = []
    for k in range(3):
        _, sp, sm = _cyclic(s, k)
        out.append(beta / (4.0 * sp * sm))
    return out


def _perimeter_cosine(phi):
    v = [1.0 - math.cos(p) for p in phi]
    out = []
    for k in range(3):
        vk, vp, vm = _cyclic(v, k)
        out.append(0.5 * (1.0 / vp + 1.0 / vm - vk / (vp * vm)))
    return out


def _half_angle(phi):
    sig = [math.sin(0.5 * p) ** 2 for p in phi]
    out = []
    for k in range(3):
        sk, sp, sm = _cyclic(sig, k)
        out.append(0.25 * (1.0 / sp + 1.0 / sm - sk / (sp * sm)))
    return out


def _cotangent(phi):
    y = [1.0 / math.tan(0.5 * p) for p in phi]
    out = []
    for k in range(3):
        yk, yp, ym = _cyclic(y, k)
        out.append(0.5 * yk * (yp + ym))
    return out


_LAWS = {
    "sine": _sine,
    "perimeter-sine": _perimeter_sine,
    "perimeter-cosine": _perimeter_cosine,
    "half-angle": _half_angle,
    "cotangent": _cotangent,
}


def infer_from_angles(
    phi1: float, phi2: float, phi3: float, law: AngleLaw = "sine"
) -> InferenceResult:
    """
    Tensions (t_s = 1) from interior junction angles in radians.

    Raises:
        InvalidInputError: unknown law, an angle outside (0, pi), or a sum != 2 pi

    Example:
        >>> infer_from_angles(*(2 * math.pi / 3,) * 3).tensions
        (0.333..., 0.333..., 0.333...)
    """
    if law not in _LAWS:
        raise InvalidInputError(f"unknown law {law!r}; choose one of {ANGLE_LAWS}")
    phi = (phi1, phi2, phi3)
    _check_angles(phi)
    raw = _LAWS[law](phi)
    total = sum(raw)
    return InferenceResult(
        tensions=tuple(t / total for t in raw),
        law=law,
        normalization="sum",
        conditioning=min(math.sin(p) for p in phi),
    )


def infer_from_state(state: DoubletState, law: AngleLaw = "sine") -> InferenceResult:
    """Apply an angle law to the junction angles of a solved state."""
    return infer_from_angles(*state.interior_angles, law=law)


def infer_from_radii(
    r1: Optional[float],
    r2: Optional[float],
    r3: Optional[float],
    C1: Optional[float],
    C2: Optional[float],
    C3: Optional[float],
    h: float,
) -> InferenceResult:
    """
    Ratios t1 : t2 : t3 = |r1||C2 - C3| : |r2||C3 - C1| : |r3||C1 - C2|, t3 = 1.

    A flat cap has no radius or centre (pass None). With the interface flat
    only t1 : t2 = |r1| : |r2| survives and is returned with t2 = 1.

    Raises:
        InvalidInputError: h <= 0, a radius shorter than h, or too little data
    """
    if not h > 0:
        raise InvalidInputError(f"junction radius must be positive, got {h}")
    radii = (r1, r2, r3)
    for k, r in enumerate(radii, start=1):
        if r is not None and abs(r) < h * (1.0 - 1e-12):
            raise InvalidInputError(
                f"|r{k}| = {abs(r)} is shorter than the junction radius {h}"
            )
    centers = (C1, C2, C3)
    conditioning = min((h / abs(r) for r in radii if r is not None), default=0.0)

    if all(r is not None for r in radii) and all(c is not None for c in centers):
        raw = [
            abs(radii[k]) * abs(centers[(k + 1) % 3] - centers[(k - 1) % 3]) for k in range(3)
        ]
        if raw[2] == 0.0:
            raise InvalidInputError("coincident centres C1 = C2 leave the scale undefined")
        return InferenceResult(
            tensions=(raw[0] / raw[2], raw[1] / raw[2], 1.0),
            law="radius",
            normalization="t3",
            conditioning=conditioning,
        )

    if r1 is not None and r2 is not None and r3 is None:
        return InferenceResult(
            tensions=(abs(r1) / abs(r2), 1.0, None),
            law="radius",
            normalization="t2",
            conditioning=conditioning,
            note="flat interface: only t1 : t2 is determined",
        )
    raise InvalidInputError(
        "radius inference needs both outer radii", {"radii": radii, "centers": centers}
    )
