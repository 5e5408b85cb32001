"""Dependency-free SVG line charts.

Fixed 800x450 canvas, linear axes padded 5% beyond the data range, nice
tick steps (1/2/2.5/5 times a power of ten).  Output bytes are a pure
function of the inputs: coordinates are emitted with fixed precision and
nothing else varies.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence
from xml.sax.saxutils import escape

WIDTH = 800
HEIGHT = 450
MARGIN_LEFT = 70
MARGIN_RIGHT = 20
MARGIN_TOP = 40
MARGIN_BOTTOM = 50

_LINE_COLOR = "#1f77b4"
_AXIS_COLOR = "#333333"


def emit_svg(xs: Sequence[float], ys: Sequence[float], title: str,
             path: str | Path, x_label: str = "size of the graph",
             y_label: str = "") -> None:
    """Write a standalone SVG line chart of ys against xs.

    A single point renders as a marker instead of a polyline.
    """
    if len(xs) == 0 or len(ys) == 0:
        raise ValueError("cannot chart an empty series")
    if len(xs) != len(ys):
        raise ValueError(f"series lengths differ: {len(xs)} vs {len(ys)}")
    Path(path).write_text(render_svg(xs, ys, title, x_label, y_label), encoding="utf-8")


def render_svg(xs: Sequence[float], ys: Sequence[float], title: str,
               x_label: str, y_label: str) -> str:
    x_lo, x_hi = _padded_range(min(xs), max(xs))
    y_lo, y_hi = _padded_range(min(ys), max(ys))
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def px(x: float) -> float:
        return MARGIN_LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w

    def py(y: float) -> float:
        return MARGIN_TOP + plot_h - (y - y_lo) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="16">{escape(title)}</text>',
    ]
    bottom = MARGIN_TOP + plot_h
    right = MARGIN_LEFT + plot_w
    parts.append(f'<line x1="{MARGIN_LEFT}" y1="{bottom}" x2="{right}" y2="{bottom}" '
                 f'stroke="{_AXIS_COLOR}" stroke-width="1"/>')
    parts.append(f'<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{bottom}" '
                 f'stroke="{_AXIS_COLOR}" stroke-width="1"/>')
    for tick in _ticks(x_lo, x_hi):
        x = px(tick)
        parts.append(f'<line x1="{x:.2f}" y1="{bottom}" x2="{x:.2f}" y2="{bottom + 5}" '
                     f'stroke="{_AXIS_COLOR}" stroke-width="1"/>')
        parts.append(f'<text x="{x:.2f}" y="{bottom + 18}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="11">{tick:g}</text>')
    for tick in _ticks(y_lo, y_hi):
        y = py(tick)
        parts.append(f'<line x1="{MARGIN_LEFT - 5}" y1="{y:.2f}" x2="{MARGIN_LEFT}" y2="{y:.2f}" '
                     f'stroke="{_AXIS_COLOR}" stroke-width="1"/>')
        parts.append(f'<text x="{MARGIN_LEFT - 8}" y="{y + 4:.2f}" text-anchor="end" '
                     f'font-family="sans-serif" font-size="11">{tick:g}</text>')
    parts.append(f'<text x="{MARGIN_LEFT + plot_w / 2:.1f}" y="{HEIGHT - 12}" '
                 f'text-anchor="middle" font-family="sans-serif" font-size="13">'
                 f'{escape(x_label)}</text>')
    if y_label:
        cy = MARGIN_TOP + plot_h / 2
        parts.append(f'<text x="16" y="{cy:.1f}" text-anchor="middle" '
                     f'font-family="sans-serif" font-size="13" '
                     f'transform="rotate(-90 16 {cy:.1f})">{escape(y_label)}</text>')
    if len(xs) == 1:
        parts.append(f'<circle cx="{px(xs[0]):.2f}" cy="{py(ys[0]):.2f}" r="3" '
                     f'fill="{_LINE_COLOR}"/>')
    else:
        points = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        parts.append(f'<polyline points="{points}" fill="none" '
                     f'stroke="{_LINE_COLOR}" stroke-width="1.5"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _padded_range(lo: float, hi: float) -> tuple[float, float]:
    """Data range widened by 5% each side; degenerate ranges get unit padding."""
    if lo == hi:
        pad = max(abs(lo) * 0.05, 1.0)
    else:
        pad = (hi - lo) * 0.05
    return lo - pad, hi + pad


def _ticks(lo: float, hi: float, target: int = 5) -> list[float]:
    """Round tick positions inside [lo, hi] at a 1/2/2.5/5 x 10^k step."""
    span = hi - lo
    raw = span / max(target - 1, 1)
    mag = 10.0 ** math.floor(math.log10(raw)) if raw > 0 else 1.0
    step = mag
    for mult in (1.0, 2.0, 2.5, 5.0, 10.0):
        if mult * mag >= raw:
            step = mult * mag
            break
    ticks = []
    value = math.ceil(lo / step) * step
    while value <= hi + step * 1e-9:
        ticks.append(float(round(value / step) * step))
        value += step
    return ticks
