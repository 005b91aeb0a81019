"""Minimal static SVG plots: log-log scatters, fit lines, histograms.

Hand-rolled on purpose: the CSV outputs are the real contract, and these
renderings only need to show points, lines, and decade ticks for a quick
visual check.  No external plotting dependency is worth that.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

_W, _H = 640, 480
_ML, _MR, _MT, _MB = 70, 20, 40, 55   # margins
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


class _Axis:
    """Maps data coordinates to pixels, linear or log10."""

    def __init__(self, lo: float, hi: float, pix_lo: float, pix_hi: float, log: bool):
        if log:
            lo, hi = math.log10(lo), math.log10(hi)
        if hi <= lo:
            hi = lo + 1.0
        self.lo, self.hi = lo, hi
        self.pix_lo, self.pix_hi = pix_lo, pix_hi
        self.log = log

    def __call__(self, v: float) -> float:
        t = (math.log10(v) if self.log else v) - self.lo
        return self.pix_lo + t / (self.hi - self.lo) * (self.pix_hi - self.pix_lo)

    def ticks(self) -> list[tuple[float, str]]:
        if self.log:
            out = []
            for e in range(math.floor(self.lo), math.ceil(self.hi) + 1):
                if self.lo <= e <= self.hi:
                    out.append((10.0**e, f"1e{e}"))
            return out
        span = self.hi - self.lo
        step = 10.0 ** math.floor(math.log10(span / 4)) if span > 0 else 1.0
        if span / step > 8:
            step *= 2
        out = []
        t = math.ceil(self.lo / step) * step
        while t <= self.hi + 1e-9:
            label = f"{t:g}"
            out.append((t, label))
            t += step
        return out


def _bounds(values: Sequence[float], log: bool) -> tuple[float, float]:
    vals = [v for v in values if (v > 0 if log else True) and math.isfinite(v)]
    if not vals:
        return (1.0, 10.0)
    lo, hi = min(vals), max(vals)
    if log:
        return (lo / 1.5, hi * 1.5)
    pad = (hi - lo) * 0.05 or 1.0
    return (lo - pad, hi + pad)


def plot(
    path: str | Path,
    series: Sequence[dict],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    logx: bool = True,
    logy: bool = True,
) -> None:
    """Write a scatter/line plot.

    Each series dict has x, y (sequences), kind ("points" or "line"), and an
    optional label shown in the legend.
    """
    all_x = [v for s in series for v in s["x"]]
    all_y = [v for s in series for v in s["y"]]
    ax = _Axis(*_bounds(all_x, logx), _ML, _W - _MR, logx)
    ay = _Axis(*_bounds(all_y, logy), _H - _MB, _MT, logy)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="22" text-anchor="middle" font-size="15">{_esc(title)}</text>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
        f'<text x="{(_ML + _W - _MR) / 2}" y="{_H - 12}" text-anchor="middle">{_esc(xlabel)}</text>',
        f'<text x="16" y="{(_MT + _H - _MB) / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2})">{_esc(ylabel)}</text>',
    ]
    for v, label in ax.ticks():
        px = ax(v)
        parts.append(f'<line x1="{px:.1f}" y1="{_H - _MB}" x2="{px:.1f}" y2="{_H - _MB + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{_H - _MB + 18}" text-anchor="middle">{label}</text>')
    for v, label in ay.ticks():
        py = ay(v)
        parts.append(f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{py + 4:.1f}" text-anchor="end">{label}</text>')

    legend_y = _MT + 6
    for i, s in enumerate(series):
        color = _COLORS[i % len(_COLORS)]
        pts = [
            (ax(x), ay(y))
            for x, y in zip(s["x"], s["y"])
            if (x > 0 or not logx) and (y > 0 or not logy)
            and math.isfinite(x) and math.isfinite(y)
        ]
        if s.get("kind", "points") == "line":
            coords = " ".join(f"{px:.1f},{py:.1f}" for px, py in pts)
            parts.append(f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        else:
            for px, py in pts:
                parts.append(f'<circle cx="{px:.1f}" cy="{py:.1f}" r="3" fill="{color}" fill-opacity="0.7"/>')
        if s.get("label"):
            parts.append(
                f'<rect x="{_W - _MR - 150}" y="{legend_y - 9}" width="10" height="10" fill="{color}"/>'
                f'<text x="{_W - _MR - 136}" y="{legend_y}">{_esc(s["label"])}</text>'
            )
            legend_y += 16
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")


def histogram(
    path: str | Path,
    edges: Sequence[float],
    counts: Sequence[int],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "count",
) -> None:
    """Write a bar chart of pre-binned counts."""
    ax = _Axis(edges[0], edges[-1], _ML, _W - _MR, log=False)
    top = max(max(counts), 1)
    ay = _Axis(0, top * 1.05, _H - _MB, _MT, log=False)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" font-family="sans-serif" font-size="12">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="22" text-anchor="middle" font-size="15">{_esc(title)}</text>',
        f'<line x1="{_ML}" y1="{_H - _MB}" x2="{_W - _MR}" y2="{_H - _MB}" stroke="black"/>',
        f'<line x1="{_ML}" y1="{_MT}" x2="{_ML}" y2="{_H - _MB}" stroke="black"/>',
        f'<text x="{(_ML + _W - _MR) / 2}" y="{_H - 12}" text-anchor="middle">{_esc(xlabel)}</text>',
        f'<text x="16" y="{(_MT + _H - _MB) / 2}" text-anchor="middle" '
        f'transform="rotate(-90 16 {(_MT + _H - _MB) / 2})">{_esc(ylabel)}</text>',
    ]
    for lo, hi, c in zip(edges[:-1], edges[1:], counts):
        x0, x1 = ax(lo), ax(hi)
        y0, y1 = ay(0), ay(c)
        parts.append(
            f'<rect x="{x0:.1f}" y="{y1:.1f}" width="{x1 - x0:.1f}" height="{y0 - y1:.1f}" '
            f'fill="#1f77b4" stroke="white" stroke-width="0.5"/>'
        )
    for v, label in ax.ticks():
        px = ax(v)
        parts.append(f'<line x1="{px:.1f}" y1="{_H - _MB}" x2="{px:.1f}" y2="{_H - _MB + 5}" stroke="black"/>')
        parts.append(f'<text x="{px:.1f}" y="{_H - _MB + 18}" text-anchor="middle">{label}</text>')
    for v, label in ay.ticks():
        py = ay(v)
        parts.append(f'<line x1="{_ML - 5}" y1="{py:.1f}" x2="{_ML}" y2="{py:.1f}" stroke="black"/>')
        parts.append(f'<text x="{_ML - 8}" y="{py + 4:.1f}" text-anchor="end">{label}</text>')
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts), encoding="utf-8")
