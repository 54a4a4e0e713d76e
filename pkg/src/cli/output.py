"""
Machine-readable documents for solver results.

JSON numbers are printed with 17 significant digits (bit-exact round trip
for 64-bit floats); nan and inf become null. CSV cells use repr(), the
shortest decimal that round-trips.
"""
import csv
import io
import json
import math
from typing import Any, Iterable, Optional, Sequence

from src.geometry import BoundaryState, DoubletState, PressurePair, Tensions
from src.solvers import CriticalPoint, GlobalResult, SurfaceSolution


def _number(value: float) -> str:
    if not math.isfinite(value):
        return "null"
    return format(value, ".17g")


def dumps(document: Any, indent: int = 2, _level: int = 0) -> str:
    """json.dumps with fixed 17-digit floats."""
    pad = " " * (indent * (_level + 1))
    close = " " * (indent * _level)
    if isinstance(document, bool) or document is None:
        return json.dumps(document)
    if isinstance(document, float):
        return _number(document)
    if isinstance(document, int):
        return str(document)
    if isinstance(document, str):
        return json.dumps(document)
    if isinstance(document, dict):
        if not document:
            return "{}"
        items = (
            f"{pad}{json.dumps(str(key))}: {dumps(value, indent, _level + 1)}"
            for key, value in document.items()
        )
        return "{\n" + ",\n".join(items) + "\n" + close + "}"
    if isinstance(document, (list, tuple)):
        if not document:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in document):
            return "[" + ", ".join(dumps(v) for v in document) + "]"
        items = (f"{pad}{dumps(value, indent, _level + 1)}" for value in document)
        return "[\n" + ",\n".join(items) + "\n" + close + "]"
    raise TypeError(f"cannot serialize {type(document).__name__}")


def _degrees(values: Sequence[float]) -> list[float]:
    return [math.degrees(v) for v in values]


def pressures_document(pressures: PressurePair) -> dict:
    return {"P1": pressures.P1, "P2": pressures.P2, "P3": pressures.P3}


def state_document(state: DoubletState) -> dict:
    """Geometry of an interior state: x, h, z, alpha and phi in degrees."""
    return {
        "x": list(state.x),
        "h": state.h,
        "z": list(state.z),
        "alpha_deg": _degrees(state.alpha),
        "phi_deg": _degrees(state.interior_angles),
    }


def boundary_document(boundary: BoundaryState) -> dict:
    return {"u": boundary.which, "x": list(boundary.x), "h": 0.0, "energy": boundary.energy}


def critical_point_document(point: CriticalPoint) -> dict:
    return {
        "geometry": state_document(point.state),
        "pressures": pressures_document(point.pressures),
        "energy": point.energy,
        "classification": point.classification.value,
        "hessian": {"trace": point.hessian_trace, "det": point.hessian_det},
        "residual": point.residual,
    }


def surface_document(tensions: Tensions, solution: SurfaceSolution) -> dict:
    doc: dict[str, Any] = {
        "tensions": tensions.model_dump(),
        "regime": solution.regime.label.value,
        "regime_boundary": solution.regime.boundary,
        "energy": solution.energy,
    }
    if solution.interior:
        doc["global"] = "interior"
        doc["classification"] = "LocalMin"
        doc["geometry"] = state_document(solution.state)
        doc["pressures"] = pressures_document(solution.pressures)
        doc["pivot"] = solution.pivot
    else:
        doc["global"] = f"u{solution.boundary.which}"
        doc["boundary"] = boundary_document(solution.boundary)
        doc["boundary_hessian"] = solution.boundary_hessian.model_dump()
    return doc


def line_document(tensions: Tensions, result: GlobalResult, regime: Optional[str]) -> dict:
    minimizer = result.minimizer
    doc: dict[str, Any] = {
        "tensions": tensions.model_dump(),
        "regime": regime,
        "global": result.global_tag,
        "energy": result.global_energy,
        "critical_points": [critical_point_document(p) for p in result.critical_points],
        "boundary_energies": {f"u{b.which}": b.energy for b in result.boundaries},
    }
    if isinstance(minimizer, CriticalPoint):
        doc["geometry"] = state_document(minimizer.state)
        doc["pressures"] = pressures_document(minimizer.pressures)
        doc["classification"] = minimizer.classification.value
    else:
        doc["boundary"] = boundary_document(minimizer)
    return doc


def csv_text(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
    return buffer.getvalue()


def plain(document: Any) -> Any:
    """Same structure with nan and inf replaced by None (strict JSON encoders)."""
    if isinstance(document, float):
        return document if math.isfinite(document) else None
    if isinstance(document, dict):
        return {key: plain(value) for key, value in document.items()}
    if isinstance(document, (list, tuple)):
        return [plain(value) for value in document]
    return document
