"""Output-only conveniences: DOT for graphs and a static SVG sketch of 2D
models.  Drawing coordinates go through float once at the boundary; nothing
here feeds back into any predicate.
"""

from __future__ import annotations

from .geometry import Arc, Disk, GeometricModel, HSeg, Rect, VSeg
from .graphs import Graph


def to_dot(graph: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in graph.nodes:
        lines.append(f'  "{v}";')
    for u, v in sorted(graph.edges):
        lines.append(f'  "{u}" -- "{v}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _bounds(model: GeometricModel) -> tuple[float, float, float, float]:
    xs: list[float] = []
    ys: list[float] = []
    for _, s in model.shapes:
        if isinstance(s, Disk):
            xs += [float(s.cx - s.r), float(s.cx + s.r)]
            ys += [float(s.cy - s.r), float(s.cy + s.r)]
        elif isinstance(s, HSeg):
            xs += [float(s.x1), float(s.x2)]
            ys += [float(s.y)]
        elif isinstance(s, VSeg):
            xs += [float(s.x)]
            ys += [float(s.y1), float(s.y2)]
        elif isinstance(s, Rect):
            xs += [float(s.x1), float(s.x2)]
            ys += [float(s.y1), float(s.y2)]
        elif isinstance(s, Arc):
            xs += [-1.2, 1.2]
            ys += [-1.2, 1.2]
    if not xs:
        return 0.0, 0.0, 1.0, 1.0
    return min(xs), min(ys), max(xs), max(ys)


def to_svg(model: GeometricModel, size: int = 400) -> str:
    """Sketch a 2D model; 3D models are rejected."""
    if model.dimensions != 2:
        raise ValueError("only 2D models can be rendered to SVG")
    import math

    x0, y0, x1, y1 = _bounds(model)
    pad = max(x1 - x0, y1 - y0, 1.0) * 0.05
    x0, y0, x1, y1 = x0 - pad, y0 - pad, x1 + pad, y1 + pad
    scale = size / max(x1 - x0, y1 - y0)

    def px(x: float) -> float:
        return (x - x0) * scale

    def py(y: float) -> float:
        return (y1 - y) * scale  # flip: SVG y grows downward

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    style = 'fill="none" stroke="black" stroke-width="1"'
    for label, s in model.shapes:
        if isinstance(s, Disk):
            parts.append(
                f'<circle cx="{px(float(s.cx)):.2f}" cy="{py(float(s.cy)):.2f}" '
                f'r="{float(s.r) * scale:.2f}" {style}/>'
            )
            lx, ly = px(float(s.cx)), py(float(s.cy))
        elif isinstance(s, HSeg):
            parts.append(
                f'<line x1="{px(float(s.x1)):.2f}" y1="{py(float(s.y)):.2f}" '
                f'x2="{px(float(s.x2)):.2f}" y2="{py(float(s.y)):.2f}" {style}/>'
            )
            lx, ly = px((float(s.x1) + float(s.x2)) / 2), py(float(s.y))
        elif isinstance(s, VSeg):
            parts.append(
                f'<line x1="{px(float(s.x)):.2f}" y1="{py(float(s.y1)):.2f}" '
                f'x2="{px(float(s.x)):.2f}" y2="{py(float(s.y2)):.2f}" {style}/>'
            )
            lx, ly = px(float(s.x)), py((float(s.y1) + float(s.y2)) / 2)
        elif isinstance(s, Rect):
            parts.append(
                f'<rect x="{px(float(s.x1)):.2f}" y="{py(float(s.y2)):.2f}" '
                f'width="{(float(s.x2) - float(s.x1)) * scale:.2f}" '
                f'height="{(float(s.y2) - float(s.y1)) * scale:.2f}" {style}/>'
            )
            lx, ly = px(float(s.x1)), py(float(s.y2))
        elif isinstance(s, Arc):
            a0 = math.radians(float(s.start))
            a1 = math.radians(float(s.start + s.span))
            large = 1 if float(s.span) > 180 else 0
            parts.append(
                f'<path d="M {px(math.cos(a0)):.2f} {py(math.sin(a0)):.2f} '
                f"A {scale:.2f} {scale:.2f} 0 {large} 0 "
                f'{px(math.cos(a1)):.2f} {py(math.sin(a1)):.2f}" {style}/>'
            )
            mid = math.radians(float(s.start + s.span / 2))
            lx, ly = px(1.1 * math.cos(mid)), py(1.1 * math.sin(mid))
        else:
            continue
        parts.append(f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="12">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
