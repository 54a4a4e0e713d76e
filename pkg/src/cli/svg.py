"""
SVG schematic of the doublet cross-section.

The symmetry axis is horizontal and the junction plane is x = 0. Each cap
runs from (0, -h) through its apex (x_k, 0) to (0, h); on the boundary
stratum (h = 0) the surviving caps are full circles of diameter |x_k|
touching the origin.
"""
import xml.etree.ElementTree as ET
from typing import Union

from pydantic import BaseModel, ConfigDict

from src.errors import InvalidInputError
from src.geometry import BoundaryState, DoubletState

PADDING = 0.10
COLORS = ("#1f77b4", "#d62728", "#2ca02c")


class CapArc(BaseModel):
    """Cap k as drawn: endpoints, apex and radius (None when flat)."""

    k: int
    start: tuple[float, float]
    apex: tuple[float, float]
    end: tuple[float, float]
    radius: float | None

    model_config = ConfigDict(frozen=True)


class CapCircle(BaseModel):
    k: int
    center: tuple[float, float]
    radius: float

    model_config = ConfigDict(frozen=True)


def doublet_shapes(geometry: Union[DoubletState, BoundaryState]) -> list:
    if isinstance(geometry, BoundaryState):
        return [
            CapCircle(k=k, center=(0.5 * x, 0.0), radius=0.5 * abs(x))
            for k, x in enumerate(geometry.x, start=1)
            if x != 0.0
        ]
    h = geometry.h
    shapes = []
    for k, (x, r) in enumerate(zip(geometry.x, geometry.radii), start=1):
        shapes.append(
            CapArc(
                k=k,
                start=(0.0, -h),
                apex=(x, 0.0),
                end=(0.0, h),
                radius=None if r is None else abs(r),
            )
        )
    return shapes


def _extent(shapes: list) -> tuple[float, float, float, float]:
    xs, ys = [0.0], [0.0]
    for shape in shapes:
        if isinstance(shape, CapCircle):
            cx, r = shape.center[0], shape.radius
            xs += [cx - r, cx + r]
            ys += [-r, r]
        else:
            x, h = shape.apex[0], shape.end[1]
            xs.append(x)
            reach = shape.radius if shape.radius is not None and abs(x) > h else h
            ys += [-reach, reach]
    return min(xs), max(xs), min(ys), max(ys)


def _arc_path(shape: CapArc) -> str:
    # svg y grows downward; radial coordinate r maps to -r
    (x0, y0), (x1, y1), (x2, y2) = (
        (p[0], -p[1]) for p in (shape.start, shape.apex, shape.end)
    )
    if shape.radius is None:
        return f"M {x0!r},{y0!r} L {x2!r},{y2!r}"
    cross = (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1)
    sweep = 1 if cross > 0 else 0
    r = shape.radius
    return (
        f"M {x0!r},{y0!r} A {r!r},{r!r} 0 0 {sweep} {x1!r},{y1!r} "
        f"A {r!r},{r!r} 0 0 {sweep} {x2!r},{y2!r}"
    )


def render_svg(geometry: Union[DoubletState, BoundaryState, None], size: int = 480) -> str:
    """
    Raises:
        InvalidInputError: no configuration to draw
    """
    if geometry is None:
        raise InvalidInputError("svg needs a solved configuration")
    shapes = doublet_shapes(geometry)
    x_lo, x_hi, y_lo, y_hi = _extent(shapes)
    pad = PADDING * max(x_hi - x_lo, y_hi - y_lo)
    width = x_hi - x_lo + 2 * pad
    height = y_hi - y_lo + 2 * pad
    stroke = 0.005 * max(width, height)

    root = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "viewBox": f"{x_lo - pad!r} {-y_hi - pad!r} {width!r} {height!r}",
            "width": str(size),
            "height": str(max(1, int(round(size * height / width)))),
        },
    )
    for shape in shapes:
        attrs = {"fill": "none", "stroke": COLORS[shape.k - 1], "stroke-width": repr(stroke)}
        if isinstance(shape, CapCircle):
            ET.SubElement(
                root,
                "circle",
                {
                    **attrs,
                    "id": f"cap{shape.k}",
                    "cx": repr(shape.center[0]),
                    "cy": "0.0",
                    "r": repr(shape.radius),
                },
            )
        else:
            ET.SubElement(root, "path", {**attrs, "id": f"cap{shape.k}", "d": _arc_path(shape)})
    if isinstance(geometry, DoubletState):
        for y in (-geometry.h, geometry.h):
            ET.SubElement(
                root,
                "circle",
                {"cx": "0.0", "cy": repr(y), "r": repr(2 * stroke), "fill": "black"},
            )
    return ET.tostring(root, encoding="unicode")

