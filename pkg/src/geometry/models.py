"""
Geometry Models - Pydantic types shared by every solver

=== THE DOUBLET ===

Two cells glued along a disc. Three spherical caps share the junction
circle of radius h; cap k has its apex at x_k on the symmetry axis:

    cap 1: outer boundary of cell 1   (x1 < 0)
    cap 2: outer boundary of cell 2   (x2 > 0)
    cap 3: the interface between them (x1 < x3 < x2)

The canonical representation is dimensionless: z_k = x_k / h, y = 1 / h.
Angles come from z: alpha_k = 2 atan(z_k), with the rational forms

    c_k = (1 - z_k^2) / (1 + z_k^2)     s_k = 2 z_k / (1 + z_k^2)

phi_k = alpha_{k+1} - alpha_{k-1} (indices mod 3) is stored as the raw
difference, never wrapped, so phi > pi (a bulged junction) is representable.

=== CONVENTIONS ===

- Tuples are indexed k = 1, 2, 3 -> positions 0, 1, 2.
- h > 0 always; configurations with h = 0 are BoundaryState.
- Radii and centers are None where the cap is flat (s_k = 0 or x_k = 0).
"""
import math
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, PrivateAttr, model_validator


Triple = tuple[float, float, float]


def _rational_cos(z: float) -> float:
    return (1.0 - z * z) / (1.0 + z * z)


def _rational_sin(z: float) -> float:
    return 2.0 * z / (1.0 + z * z)


class Tensions(BaseModel):
    """
    Surface tensions of the three caps and the junction line tension.

    Example:
        >>> t = Tensions(t1=5, t2=6, t3=4, kappa=1)
        >>> t.ts
        15.0
    """

    t1: float = Field(..., gt=0, allow_inf_nan=False, description="Tension of cap 1")
    t2: float = Field(..., gt=0, allow_inf_nan=False, description="Tension of cap 2")
    t3: float = Field(..., gt=0, allow_inf_nan=False, description="Tension of the interface")
    kappa: float = Field(
        0.0, ge=0, allow_inf_nan=False, description="Line tension of the junction"
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"t1": 5.0, "t2": 6.0, "t3": 4.0, "kappa": 1.0}},
    )

    @classmethod
    def of(cls, t1: float, t2: float, t3: float, kappa: float = 0.0) -> "Tensions":
        return cls(t1=t1, t2=t2, t3=t3, kappa=kappa)

    @property
    def surface(self) -> Triple:
        return (self.t1, self.t2, self.t3)

    @property
    def ts(self) -> float:
        """Sum of the surface tensions."""
        return self.t1 + self.t2 + self.t3

    def scaled(self, factor: float) -> "Tensions":
        return Tensions(
            t1=self.t1 * factor,
            t2=self.t2 * factor,
            t3=self.t3 * factor,
            kappa=self.kappa * factor,
        )


class ReducedVolumes(BaseModel):
    """
    Reduced cell volumes w_k = 6 v_k / pi.

    The constraint polynomials are cubic in (x, h) with exactly these
    prefactors, so every formula reads cleaner in w than in v.

    Derived:
        w3 = w1 + w2
        g = (w2, w1, -w3), summing to zero
        d_k = (g_{k-1} - g_{k+1}) / (g_{k-1} + g_{k+1})
    """

    w1: float = Field(..., gt=0, allow_inf_nan=False, description="Reduced volume of cell 1")
    w2: float = Field(..., gt=0, allow_inf_nan=False, description="Reduced volume of cell 2")

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={"example": {"w1": 0.5, "w2": 0.5}},
    )

    @classmethod
    def of(cls, w1: float, w2: float) -> "ReducedVolumes":
        return cls(w1=w1, w2=w2)

    @classmethod
    def from_cell_volumes(cls, v1: float, v2: float) -> "ReducedVolumes":
        return cls(w1=6.0 * v1 / math.pi, w2=6.0 * v2 / math.pi)

    @property
    def w3(self) -> float:
        return self.w1 + self.w2

    @property
    def g(self) -> Triple:
        return (self.w2, self.w1, -self.w3)

    @property
    def d(self) -> Triple:
        g = self.g
        return tuple(
            (g[(k - 1) % 3] - g[(k + 1) % 3]) / (g[(k - 1) % 3] + g[(k + 1) % 3])
            for k in range(3)
        )

    def scaled(self, factor: float) -> "ReducedVolumes":
        """Multiply both volumes by factor (lengths scale by its cube root)."""
        return ReducedVolumes(w1=self.w1 * factor, w2=self.w2 * factor)


class DoubletState(BaseModel):
    """
    Canonical interior configuration (h > 0).

    Fields are the dimensionless apexes z_k and the inverse junction radius
    y; everything else is derived on access. Built by the solvers or by
    state_from_xh / parameterize_manifold.
    """

    z1: float = Field(..., allow_inf_nan=False)
    z2: float = Field(..., allow_inf_nan=False)
    z3: float = Field(..., allow_inf_nan=False)
    y: float = Field(..., gt=0, allow_inf_nan=False, description="1 / h")

    model_config = ConfigDict(frozen=True)

    # exact h when the state was built from (x, h)
    _h: Optional[float] = PrivateAttr(default=None)

    @model_validator(mode="after")
    def _check_ordering(self) -> "DoubletState":
        if not (self.z1 < self.z3 < self.z2):
            raise ValueError(
                f"apex ordering z1 < z3 < z2 violated: ({self.z1}, {self.z2}, {self.z3})"
            )
        return self

    @property
    def z(self) -> Triple:
        return (self.z1, self.z2, self.z3)

    @property
    def h(self) -> float:
        return self._h if self._h is not None else 1.0 / self.y

    @property
    def x(self) -> Triple:
        h = self.h
        return (self.z1 * h, self.z2 * h, self.z3 * h)

    @property
    def alpha(self) -> Triple:
        return tuple(2.0 * math.atan(z) for z in self.z)

    @property
    def c(self) -> Triple:
        return tuple(_rational_cos(z) for z in self.z)

    @property
    def s(self) -> Triple:
        return tuple(_rational_sin(z) for z in self.z)

    @property
    def phi(self) -> Triple:
        """Raw angle differences; phi3 closes the sum to exactly zero."""
        a1, a2, a3 = self.alpha
        phi1 = a2 - a3
        phi2 = a3 - a1
        return (phi1, phi2, -(phi1 + phi2))

    @property
    def interior_angles(self) -> Triple:
        """(phi1, phi2, phi3 + 2 pi): all positive, summing to 2 pi."""
        phi1, phi2, phi3 = self.phi
        return (phi1, phi2, phi3 + 2.0 * math.pi)

    @property
    def radii(self) -> tuple[Optional[float], ...]:
        h = self.h
        return tuple(None if s == 0.0 else h / s for s in self.s)

    @property
    def centers(self) -> tuple[Optional[float], ...]:
        h = self.h
        return tuple(None if x == 0.0 else (x * x - h * h) / (2.0 * x) for x in self.x)


class BoundaryState(BaseModel):
    """
    Configuration on the h = 0 stratum: one interface has vanished.

    which = 1: cell 1 internalized in cell 2 (x1 = 0)
    which = 2: cell 2 internalized in cell 1 (x2 = 0)
    which = 3: the cells are separated     (x3 = 0)
    """

    which: Literal[1, 2, 3]
    x1: float
    x2: float
    x3: float
    energy: float = Field(..., ge=0)

    model_config = ConfigDict(frozen=True)

    @property
    def x(self) -> Triple:
        return (self.x1, self.x2, self.x3)

    @property
    def h(self) -> float:
        return 0.0


class PressurePair(BaseModel):
    """Relative cell pressures (Lagrange multipliers of the volume constraints)."""

    P1: float
    P2: float

    model_config = ConfigDict(frozen=True)

    @property
    def P3(self) -> float:
        return self.P1 - self.P2
