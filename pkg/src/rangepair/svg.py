"""Render a staircase subdivision as SVG, one polygon per cell with its depth."""
from __future__ import annotations

import math
from typing import Sequence
from xml.sax.saxutils import escape

from .geometry import Point
from .staircase import StaircaseIndex

PALETTE = ("#fde0dd", "#fcc5c0", "#fa9fb5", "#f768a1", "#dd3497", "#ae017e", "#7a0177")


def _frame(points: Sequence[Point]):
    if not points:
        return -1.0, -1.0, 1.0, 1.0
    xs = [float(p.x) for p in points]
    ys = [float(p.y) for p in points]
    pad = max(max(xs) - min(xs), max(ys) - min(ys), 1.0) * 0.15
    return min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad


def render_svg(index: StaircaseIndex, points: Sequence[Point], size: int = 640) -> str:
    x0, y0, x1, y1 = _frame(points)
    k = size / max(x1 - x0, y1 - y0)

    def clamp(v, lo, hi):
        v = float(v)
        return lo if v == -math.inf else hi if v == math.inf else min(max(v, lo), hi)

    def sx(v):
        return (clamp(v, x0, x1) - x0) * k

    def sy(v):
        return (y1 - clamp(v, y0, y1)) * k

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {(x1 - x0) * k:.2f} {(y1 - y0) * k:.2f}">']
    for cell in index.cells:
        ring = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in cell.vertices())
        fill = PALETTE[min(cell.depth, len(PALETTE) - 1)]
        out.append(f'<polygon points="{ring}" fill="{fill}" stroke="#333" stroke-width="1"/>')
    for cell in index.cells:
        zx, zy = cell.z
        label = str(cell.depth) if cell.depth < index.c else f"{index.c}+"
        out.append(f'<text x="{sx(zx) - 4:.2f}" y="{sy(zy) + 12:.2f}" font-size="10" '
                   f'text-anchor="end">{escape(label)}</text>')
    for p in points:
        out.append(f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" r="3" fill="#000">'
                   f'<title>{p.id}: ({p.x}, {p.y})</title></circle>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
