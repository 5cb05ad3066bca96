"""Static SVG drawing of the chamber fan of a report.

The layout is schematic: every ray (Eff edges, Mov edges, walls) is placed
in the closed upper half-plane with equal angular spacing, keeping the
counterclockwise order of the true classes.  Mov chambers are shaded and the
Eff-only sectors are left pale.
"""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

from .chamberfan import MMPReport, _ccw_sort

WIDTH, HEIGHT = 640, 380
CX, CY, RADIUS = WIDTH / 2, HEIGHT - 50, 250
_FILLS = ("#cfe3f7", "#f7dccf", "#d9f0d3", "#efe0f5", "#f5f0c8")


def _point(theta: float, rad: float) -> tuple[float, float]:
    return CX + rad * math.cos(theta), CY - rad * math.sin(theta)


def _sector(t0: float, t1: float, rad: float) -> str:
    x0, y0 = _point(t0, rad)
    x1, y1 = _point(t1, rad)
    large = 1 if t1 - t0 > math.pi else 0
    return f"M{CX:.1f},{CY:.1f} L{x0:.1f},{y0:.1f} A{rad},{rad} 0 {large} 0 {x1:.1f},{y1:.1f} Z"


def render_svg(rep: MMPReport) -> str:
    p = rep.params
    title = f"Mov(R) for n={p.n}, r={p.r}, d={p.d}"
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="serif" font-size="14">',
           f'<title>{escape(title)}</title>',
           f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
           f'<text x="{CX}" y="24" text-anchor="middle" font-size="16">{escape(title)}</text>']
    if rep.degenerate:
        out.append(f'<text x="{CX}" y="{HEIGHT / 2}" text-anchor="middle">{escape(rep.notes[0])}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    rays = {rep.eff.ray1, rep.eff.ray2, rep.mov.ray1, rep.mov.ray2}
    rays |= {w.cls for w in rep.walls}
    for c in rep.chambers:
        rays |= c.nef.rays
    order = _ccw_sort(rays, rep.eff.ray1)
    step = math.pi / (len(order) - 1)
    theta = {c: k * step for k, c in enumerate(order)}

    # Eff sector, then the Mov chambers on top
    out.append(f'<path d="{_sector(0.0, math.pi, RADIUS)}" fill="#f4f4f4" stroke="none"/>')
    for k, ch in enumerate(rep.chambers):
        t0, t1 = theta[ch.nef.ray1], theta[ch.nef.ray2]
        out.append(f'<path d="{_sector(t0, t1, RADIUS)}" fill="{_FILLS[k % len(_FILLS)]}" '
                   f'stroke="none"><title>Nef({escape(ch.model)}) = {escape(str(ch.nef))}</title></path>')
        lx, ly = _point((t0 + t1) / 2, RADIUS * 0.6)
        out.append(f'<text x="{lx:.1f}" y="{ly:.1f}" text-anchor="middle" font-style="italic">'
                   f'{escape(ch.model)}</text>')

    mov_edges = rep.mov.rays
    eff_edges = rep.eff.rays
    for c in order:
        x, y = _point(theta[c], RADIUS)
        width = 2.5 if c in mov_edges or c in eff_edges else 1.2
        dash = ' stroke-dasharray="6,4"' if c in eff_edges and c not in mov_edges else ""
        out.append(f'<line x1="{CX:.1f}" y1="{CY:.1f}" x2="{x:.1f}" y2="{y:.1f}" '
                   f'stroke="black" stroke-width="{width}"{dash}/>')
        lx, ly = _point(theta[c], RADIUS + 22)
        anchor = "start" if theta[c] < math.pi / 2 - 0.2 else ("end" if theta[c] > math.pi / 2 + 0.2 else "middle")
        out.append(f'<text x="{lx:.1f}" y="{ly:.1f}" text-anchor="{anchor}">{escape(c.label())}</text>')

    out.append(f'<text x="{CX}" y="{HEIGHT - 14}" text-anchor="middle" font-size="12">'
               f'shaded: chambers of Mov(R); pale: Eff(R) only; dashed: Eff edge</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
