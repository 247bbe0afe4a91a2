"""Minimal standalone SVG line charts with a logarithmic x axis.

Written by hand rather than through a plotting library so that the bytes
depend only on the data.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import List

from .experiments import Report

WIDTH, HEIGHT = 640, 400
MARGIN = 60
X_COLUMN = "N"
SKIP = {"N", "H", "n"}


def _num(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _ticks(lo: float, hi: float, count: int = 5) -> List[float]:
    if lo == hi:
        return [lo]
    return [lo + (hi - lo) * i / (count - 1) for i in range(count)]


def line_chart(xs, ys, title: str, ylabel: str) -> str:
    """SVG for y against log10(x); a single point becomes a lone marker."""
    lx = [math.log10(x) for x in xs]
    x0, x1 = min(lx), max(lx)
    y0, y1 = min(ys), max(ys)
    if x0 == x1:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y0 == y1:
        pad = abs(y0) * 0.1 or 1.0
        y0, y1 = y0 - pad, y1 + pad
    pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def px(v):
        return MARGIN + (v - x0) / (x1 - x0) * pw

    def py(v):
        return HEIGHT - MARGIN - (v - y0) / (y1 - y0) * ph

    pts = [(px(a), py(b)) for a, b in zip(lx, ys)]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" font-size="16">{title}</text>',
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>',
    ]
    for t in _ticks(x0, x1):
        out.append(f'<text x="{px(t):.2f}" y="{HEIGHT - MARGIN + 18}" text-anchor="middle" '
                   f'font-size="11">1e{t:.2f}</text>')
    for t in _ticks(y0, y1):
        out.append(f'<text x="{MARGIN - 6}" y="{py(t) + 4:.2f}" text-anchor="end" font-size="11">{t:.4g}</text>')
    out.append(f'<text x="{WIDTH / 2:.1f}" y="{HEIGHT - 16}" text-anchor="middle" font-size="12">{X_COLUMN} (log scale)</text>')
    out.append(f'<text x="16" y="{HEIGHT / 2:.1f}" transform="rotate(-90 16 {HEIGHT / 2:.1f})" '
               f'text-anchor="middle" font-size="12">{ylabel}</text>')
    if len(pts) > 1:
        path = " ".join(f"{x:.2f},{y:.2f}" for x, y in pts)
        out.append(f'<polyline points="{path}" fill="none" stroke="steelblue" stroke-width="1.5"/>')
    for x, y in pts:
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3.5" fill="steelblue"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_plots(report, out_dir) -> List[Path]:
    """One chart per numeric column against N.  Accepts a Report or a CSV path."""
    if not isinstance(report, Report):
        report = Report.from_csv(report)
    if not report.rows or X_COLUMN not in report.columns:
        return []
    xi = report.columns.index(X_COLUMN)
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create plot directory {out}: {exc}") from exc
    paths = []
    for ci, name in enumerate(report.columns):
        if name in SKIP:
            continue
        pairs = sorted((r[xi], r[ci]) for r in report.rows if _num(r[xi]) and r[xi] > 0 and _num(r[ci]))
        if not pairs:
            continue
        svg = line_chart([p[0] for p in pairs], [p[1] for p in pairs], f"{report.name}: {name}", name)
        path = out / f"{report.name}_{name}.svg"
        path.write_text(svg)
        paths.append(path)
    return paths
