"""Static SVG 1.1 figures of packings.

Subcontainers are drawn as light gray rounded-triangle paths, circles in dark
gray, the container as an outline. The output contains exactly one <circle>
element per placement and one <path> element per subcontainer.
"""

import math

from .documents import PackingDocument
from .geometry import Hat, Point, Square, Triangle

_SUBCONTAINER_FILL = "#d4d4d4"
_SUBCONTAINER_STROKE = "#a0a0a0"
_CIRCLE_FILL = "#696969"


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def _hat_path(vertices: list[Point], rounding_radius: float) -> str:
    """SVG path data for a triangle with corners rounded to the given radius."""
    tri = Triangle(tuple(vertices))
    hat = Hat(tri, rounding_radius)
    s = hat.rounding_radius
    corners = hat.eroded_corners()
    verts = tri.vertices
    if s == 0.0:
        pts = " L ".join(f"{_fmt(p.x)} {_fmt(p.y)}" for p in verts)
        return f"M {pts} Z"
    if math.dist(corners[0], corners[1]) < 1e-12 * s and math.dist(corners[1], corners[2]) < 1e-12 * s:
        # fully rounded: the hat is its incircle, drawn as two half arcs
        cx, cy = corners[0]
        return (
            f"M {_fmt(cx + s)} {_fmt(cy)} "
            f"A {_fmt(s)} {_fmt(s)} 0 1 1 {_fmt(cx - s)} {_fmt(cy)} "
            f"A {_fmt(s)} {_fmt(s)} 0 1 1 {_fmt(cx + s)} {_fmt(cy)} Z"
        )
    normals = []
    for i in range(3):
        (x1, y1), (x2, y2) = verts[i], verts[(i + 1) % 3]
        ln = math.hypot(x2 - x1, y2 - y1)
        normals.append(((y2 - y1) / ln, -(x2 - x1) / ln))  # outward for CCW
    parts = []
    for i in range(3):
        n_prev = normals[(i + 2) % 3]
        n_next = normals[i]
        cx, cy = corners[i]
        arc_start = (cx + s * n_prev[0], cy + s * n_prev[1])
        arc_end = (cx + s * n_next[0], cy + s * n_next[1])
        verb = "M" if i == 0 else "L"
        parts.append(f"{verb} {_fmt(arc_start[0])} {_fmt(arc_start[1])}")
        parts.append(f"A {_fmt(s)} {_fmt(s)} 0 0 1 {_fmt(arc_end[0])} {_fmt(arc_end[1])}")
    parts.append("Z")
    return " ".join(parts)


def render_packing_svg(doc: PackingDocument, size: float = 640.0) -> str:
    """Render a packing document as a standalone SVG figure."""
    container = doc.container_shape()
    if isinstance(container, Square):
        min_x = min_y = 0.0
        max_x = max_y = container.side
    else:
        xs = [p.x for p in container.vertices]
        ys = [p.y for p in container.vertices]
        min_x, max_x = min(xs), max(xs)
        min_y, max_y = min(ys), max(ys)
    extent = max(max_x - min_x, max_y - min_y)
    pad = 0.04 * extent
    vb_x, vb_y = min_x - pad, min_y - pad
    vb_w, vb_h = (max_x - min_x) + 2 * pad, (max_y - min_y) + 2 * pad
    stroke = extent / 300.0

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(size)}" height="{_fmt(size * vb_h / vb_w)}" '
        f'viewBox="{_fmt(vb_x)} {_fmt(vb_y)} {_fmt(vb_w)} {_fmt(vb_h)}">',
        # flip to the usual y-up orientation
        f'<g transform="matrix(1 0 0 -1 0 {_fmt(vb_y + vb_y + vb_h)})">',
    ]
    if isinstance(container, Square):
        lines.append(
            f'<rect x="0" y="0" width="{_fmt(container.side)}" height="{_fmt(container.side)}" '
            f'fill="none" stroke="black" stroke-width="{_fmt(stroke)}"/>'
        )
    else:
        pts = " ".join(f"{_fmt(p.x)},{_fmt(p.y)}" for p in container.vertices)
        lines.append(
            f'<polygon points="{pts}" fill="none" stroke="black" stroke-width="{_fmt(stroke)}"/>'
        )
    for entry in sorted(doc.subcontainers, key=lambda e: e["depth"]):
        vertices = [Point(float(v[0]), float(v[1])) for v in entry["vertices"]]
        path = _hat_path(vertices, float(entry.get("rounding_radius", 0.0)))
        lines.append(
            f'<path d="{path}" fill="{_SUBCONTAINER_FILL}" '
            f'stroke="{_SUBCONTAINER_STROKE}" stroke-width="{_fmt(stroke / 2)}"/>'
        )
    for p in doc.placements:
        lines.append(
            f'<circle cx="{_fmt(p["x"])}" cy="{_fmt(p["y"])}" r="{_fmt(p["radius"])}" '
            f'fill="{_CIRCLE_FILL}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines)
