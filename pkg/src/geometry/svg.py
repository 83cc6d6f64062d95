"""
SVG rendering of Harder-Narasimhan polygons
"""
from pathlib import Path
from typing import Iterable, List, Optional

from loguru import logger

from src.geometry.charge_geometry import Charge, HNPolygon

CANVAS_SIZE = 400
PADDING = 0.1


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def polygon_to_svg(polygon: HNPolygon, interior_points: Iterable[Charge] = ()) -> str:
    """Render the extremal chain as a path and every charge as a dot.

    The viewBox is in charge units with the imaginary axis flipped, so the
    picture matches the usual drawing of the upper half-plane.
    """
    points: List[Charge] = list(polygon.extremal_points) + list(interior_points)
    xs = [float(p.re) for p in points]
    ys = [-float(p.im) for p in points]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span = max(max_x - min_x, max_y - min_y, 1.0)
    pad = span * PADDING
    view_box = " ".join(_fmt(v) for v in (min_x - pad, min_y - pad, (max_x - min_x) + 2 * pad, (max_y - min_y) + 2 * pad))
    stroke = _fmt(span / 200)
    radius = _fmt(span / 80)

    chain = polygon.extremal_points
    path = " ".join(
        f"{'M' if index == 0 else 'L'} {_fmt(float(p.re))} {_fmt(-float(p.im))}"
        for index, p in enumerate(chain)
    )
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS_SIZE}" height="{CANVAS_SIZE}" viewBox="{view_box}">',
        f'  <line x1="0" y1="0" x2="{_fmt(float(polygon.total.re))}" y2="{_fmt(-float(polygon.total.im))}" stroke="#999999" stroke-width="{stroke}" stroke-dasharray="{stroke}"/>',
        f'  <path d="{path}" fill="none" stroke="#1f4e79" stroke-width="{stroke}"/>',
    ]
    seen = set()
    for p in points:
        if p in seen:
            continue
        seen.add(p)
        colour = "#c00000" if p in chain else "#404040"
        lines.append(f'  <circle cx="{_fmt(float(p.re))}" cy="{_fmt(-float(p.im))}" r="{radius}" fill="{colour}"/>')
    lines.append('</svg>')
    return "\n".join(lines) + "\n"


def write_polygon_svg(path: Path, polygon: HNPolygon, interior_points: Iterable[Charge] = ()) -> Optional[Path]:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(polygon_to_svg(polygon, interior_points), encoding='utf-8')
    logger.info(f"Polygon SVG saved to {path}")
    return path
