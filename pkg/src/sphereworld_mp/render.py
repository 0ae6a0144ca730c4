"""Planar SVG rendering of a scenario and a planned path."""

from __future__ import annotations

import numpy as np

from .collar import build_atlas
from .paths import PiecewisePath
from .scenario import Scenario

PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")
SIZE = 600


def _f(x: float) -> str:
    return f"{x:.4f}"


def render_svg(sc: Scenario, path: PiecewisePath | None = None) -> str:
    if sc.n != 2:
        raise ValueError(f"rendering needs a planar scenario, got n={sc.n}")
    samples = path.all_samples() if path is not None else np.stack([sc.start, sc.goal])

    if sc.world is not None:
        half = 1.05 * sc.world.work_radius
        cx = cy = 0.0
    else:
        pts = samples.reshape(-1, 2)
        if sc.punctures is not None and len(sc.punctures):
            pts = np.concatenate([pts, sc.punctures])
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        cx, cy = (lo + hi) / 2
        half = 0.55 * float(max(hi - lo)) + 1.0
    scale = SIZE / (2 * half)

    def X(x):
        return (x - cx + half) * scale

    def Y(y):
        return (half - (y - cy)) * scale

    def R(r):
        return r * scale

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    marks = []
    if sc.world is not None:
        w = sc.world
        out.append(
            f'<circle cx="{_f(X(0))}" cy="{_f(Y(0))}" r="{_f(R(w.work_radius))}" '
            'fill="none" stroke="black" stroke-width="2"/>'
        )
        atlas = build_atlas(w, fraction=sc.collar_width_fraction)
        out.append(
            f'<circle cx="{_f(X(0))}" cy="{_f(Y(0))}" r="{_f(R(w.work_radius - atlas.outer_width))}" '
            'fill="none" stroke="gray" stroke-dasharray="6,4"/>'
        )
        for c, r, wi in zip(w.centers, w.radii, atlas.obstacle_widths):
            out.append(
                f'<circle cx="{_f(X(c[0]))}" cy="{_f(Y(c[1]))}" r="{_f(R(r))}" fill="#555555" stroke="black"/>'
            )
            out.append(
                f'<circle cx="{_f(X(c[0]))}" cy="{_f(Y(c[1]))}" r="{_f(R(r + wi))}" '
                'fill="none" stroke="gray" stroke-dasharray="6,4"/>'
            )
            marks.append(c)
    elif sc.punctures is not None:
        marks.extend(sc.punctures)
    for q in marks:
        x, y = X(q[0]), Y(q[1])
        out.append(
            f'<path d="M {_f(x - 5)} {_f(y - 5)} L {_f(x + 5)} {_f(y + 5)} '
            f'M {_f(x - 5)} {_f(y + 5)} L {_f(x + 5)} {_f(y - 5)}" stroke="orange" stroke-width="2"/>'
        )

    for i in range(sc.k):
        col = PALETTE[i % len(PALETTE)]
        pts = " ".join(f"{_f(X(p[0]))},{_f(Y(p[1]))}" for p in samples[:, i])
        out.append(f'<polyline points="{pts}" fill="none" stroke="{col}" stroke-width="1.5"/>')
        s, g = sc.start[i], sc.goal[i]
        out.append(f'<circle cx="{_f(X(s[0]))}" cy="{_f(Y(s[1]))}" r="5" fill="{col}"/>')
        out.append(
            f'<rect x="{_f(X(g[0]) - 5)}" y="{_f(Y(g[1]) - 5)}" width="10" height="10" '
            f'fill="none" stroke="{col}" stroke-width="2"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
