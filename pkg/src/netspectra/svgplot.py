"""Minimal static SVG rendering: polyline curves and histogram steps.

Good enough to eyeball a spectral density against a sampled histogram; not a
plotting library.  Output is deterministic (fixed float formatting).
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

W, H = 640, 420
MARGIN = 50


def _fmt(x: float) -> str:
    return f"{x:.3f}"


def _map(x, y, xlim, ylim):
    px = MARGIN + (x - xlim[0]) / (xlim[1] - xlim[0]) * (W - 2 * MARGIN)
    py = H - MARGIN - (y - ylim[0]) / (ylim[1] - ylim[0]) * (H - 2 * MARGIN)
    return px, py


def render_svg(path: str | Path,
               curves: list[tuple[np.ndarray, np.ndarray, str]],
               steps: tuple[np.ndarray, np.ndarray] | None = None,
               title: str = "") -> None:
    """Write an SVG with polyline `curves` [(x, y, color)] and optional
    histogram `steps` (bin_edges, density)."""
    xs = [np.asarray(c[0]) for c in curves]
    ys = [np.asarray(c[1]) for c in curves]
    if steps is not None:
        xs.append(np.asarray(steps[0]))
        ys.append(np.asarray(steps[1]))
    xlim = (min(float(x.min()) for x in xs), max(float(x.max()) for x in xs))
    ylo = 0.0
    yhi = max(float(y.max()) for y in ys) * 1.08
    if yhi <= ylo:
        yhi = ylo + 1.0
    ylim = (ylo, yhi)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" '
             f'viewBox="0 0 {W} {H}">',
             f'<rect width="{W}" height="{H}" fill="white"/>']
    if title:
        parts.append(f'<text x="{W // 2}" y="24" text-anchor="middle" '
                     f'font-size="14" font-family="sans-serif">{title}</text>')
    # axes
    x0, y0 = _map(xlim[0], ylim[0], xlim, ylim)
    x1, y1 = _map(xlim[1], ylim[1], xlim, ylim)
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x1)}" '
                 f'y2="{_fmt(y0)}" stroke="black"/>')
    parts.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(x0)}" '
                 f'y2="{_fmt(y1)}" stroke="black"/>')
    for val, anchor in ((xlim[0], "start"), (xlim[1], "end")):
        px, _ = _map(val, ylim[0], xlim, ylim)
        parts.append(f'<text x="{_fmt(px)}" y="{H - MARGIN + 18}" '
                     f'text-anchor="{anchor}" font-size="11" '
                     f'font-family="sans-serif">{val:.4g}</text>')
    for val in (ylim[0], ylim[1]):
        _, py = _map(xlim[0], val, xlim, ylim)
        parts.append(f'<text x="{MARGIN - 6}" y="{_fmt(py + 4)}" '
                     f'text-anchor="end" font-size="11" '
                     f'font-family="sans-serif">{val:.4g}</text>')

    if steps is not None:
        edges, dens = steps
        pts = []
        for lo, hi, d in zip(edges[:-1], edges[1:], dens):
            for xv in (lo, hi):
                px, py = _map(float(xv), float(d), xlim, ylim)
                pts.append(f"{_fmt(px)},{_fmt(py)}")
        parts.append(f'<polyline points="{" ".join(pts)}" fill="none" '
                     f'stroke="#888888" stroke-width="1"/>')

    for x, y, color in curves:
        pts = " ".join(f"{_fmt(px)},{_fmt(py)}"
                       for px, py in (_map(float(a), float(b), xlim, ylim)
                                      for a, b in zip(x, y)))
        parts.append(f'<polyline points="{pts}" fill="none" '
                     f'stroke="{color}" stroke-width="1.5"/>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts) + "\n", encoding="utf-8")
