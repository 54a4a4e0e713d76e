"""
Phase scan over the junction angles.

Each (alpha1, alpha2) in (-pi, 0) x (0, pi) fixes, through the forward map,
the one pair (t1, t2) for which that geometry is critical. Classifying the
geometry and comparing its energy with the boundary points maps the (t1, t2)
plane without solving a single nonlinear system.
"""
import math
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict

from config.logging_config import get_logger
from config.settings import get_settings
from src.errors import InvalidInputError
from src.geometry import ReducedVolumes
from src.solvers.line import (
    Classification,
    classify_arrays,
    forward_map_arrays,
    start_grid,
    tangent_invariants,
)
from src.solvers.surface import boundary_energies

logger = get_logger(__name__)

CSV_COLUMNS = (
    "alpha1", "alpha2", "t1", "t2", "y", "z3", "trace", "det", "class",
    "bulge1", "bulge2", "E", "E1", "E2", "E3", "global",
)


class PhaseCell(BaseModel):
    """One retained scan sample (t1, t2 > 0)."""

    alpha1: float
    alpha2: float
    t1: float
    t2: float
    y: float
    z3: float
    trace: float
    det: float
    classification: Classification
    bulge1: bool
    bulge2: bool
    energy: float
    E1: float
    E2: float
    E3: float
    global_tag: str

    model_config = ConfigDict(frozen=True)

    @property
    def is_local_min(self) -> bool:
        return self.classification is Classification.LOCAL_MIN

    def row(self) -> tuple:
        return (
            self.alpha1, self.alpha2, self.t1, self.t2, self.y, self.z3,
            self.trace, self.det, self.classification.value,
            int(self.bulge1), int(self.bulge2),
            self.energy, self.E1, self.E2, self.E3, self.global_tag,
        )


def scan_arrays(
    t3: float, kappa: float, volumes: ReducedVolumes, n: int
) -> dict[str, np.ndarray]:
    """Column arrays of the retained cells, row-major in alpha1."""
    if n < 2:
        raise InvalidInputError(f"scan grid must be at least 2, got {n}")
    a1, a2 = start_grid(n)
    z1, z2 = np.tan(0.5 * a1), np.tan(0.5 * a2)
    with np.errstate(all="ignore"):
        y, z3, t1, t2 = forward_map_arrays(z1, z2, t3, kappa, volumes)
    keep = np.isfinite(t1) & np.isfinite(t2) & (t1 > 0) & (t2 > 0)
    a1, a2, z1, z2 = a1[keep], a2[keep], z1[keep], z2[keep]
    y, z3, t1, t2 = y[keep], z3[keep], t1[keep], t2[keep]

    t = (t1, t2, np.full_like(t1, t3))
    zs = (z1, z2, z3)
    c = [(1.0 - z * z) / (1.0 + z * z) for z in zs]
    s = [2.0 * z / (1.0 + z * z) for z in zs]
    ts = t1 + t2 + t3
    trace, det = tangent_invariants(c, s, t, kappa * y)
    label = classify_arrays(trace, det, ts)

    alpha3 = 2.0 * np.arctan(z3)
    h = 1.0 / y
    energy = math.pi * (
        t1 * (z1 * h) ** 2 + t2 * (z2 * h) ** 2 + t3 * (z3 * h) ** 2 + ts * h * h + 2.0 * kappa * h
    )
    e1, e2, e3 = (np.broadcast_to(e, t1.shape) for e in boundary_energies(*t, volumes))
    boundary = np.stack([e1, e2, e3])
    best = np.argmin(boundary, axis=0)
    tag = np.array(["u1", "u2", "u3"])[best]
    interior = (label == Classification.LOCAL_MIN.value) & (energy < boundary.min(axis=0))
    tag = np.where(interior, "interior", tag)

    return {
        "alpha1": a1,
        "alpha2": a2,
        "t1": t1,
        "t2": t2,
        "y": y,
        "z3": z3,
        "trace": trace,
        "det": det,
        "class": label,
        "bulge1": (a2 - alpha3) > math.pi,
        "bulge2": (alpha3 - a1) > math.pi,
        "E": energy,
        "E1": e1,
        "E2": e2,
        "E3": e3,
        "global": tag,
    }


def scan_angle_grid(
    t3: float, kappa: float, volumes: ReducedVolumes, n: Optional[int] = None
) -> list[PhaseCell]:
    """
    Evaluate the n x n angle grid; cells with t1 <= 0 or t2 <= 0 are dropped.

    Output order is row-major in alpha1 and bit-for-bit reproducible.
    """
    n = n or get_settings().scan_grid
    cols = scan_arrays(t3, kappa, volumes, n)
    cells = [
        PhaseCell(
            alpha1=float(cols["alpha1"][i]),
            alpha2=float(cols["alpha2"][i]),
            t1=float(cols["t1"][i]),
            t2=float(cols["t2"][i]),
            y=float(cols["y"][i]),
            z3=float(cols["z3"][i]),
            trace=float(cols["trace"][i]),
            det=float(cols["det"][i]),
            classification=Classification(str(cols["class"][i])),
            bulge1=bool(cols["bulge1"][i]),
            bulge2=bool(cols["bulge2"][i]),
            energy=float(cols["E"][i]),
            E1=float(cols["E1"][i]),
            E2=float(cols["E2"][i]),
            E3=float(cols["E3"][i]),
            global_tag=str(cols["global"][i]),
        )
        for i in range(cols["t1"].size)
    ]
    logger.info(
        "scan_done",
        n=n,
        kept=len(cells),
        local_min=sum(c.is_local_min for c in cells),
        kappa=kappa,
        t3=t3,
    )
    return cells
