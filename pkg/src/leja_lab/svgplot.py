"""Minimal static SVG line plots, written directly as path elements.

Keeps the report pipeline free of plotting dependencies; output files are
deterministic for identical inputs.
"""
from __future__ import annotations

import math

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
_W, _H = 640, 440
_ML, _MR, _MT, _MB = 70, 20, 42, 52


def line_plot_svg(series, title: str, xlabel: str, ylabel: str) -> str:
    """Render [(label, xs, ys), ...] as one SVG document (string)."""
    xs_all = [x for _, xs, _ in series for x in xs]
    ys_all = [y for _, _, ys in series for y in ys if math.isfinite(y)]
    if not xs_all or not ys_all:
        raise ValueError("nothing to plot")
    x0, x1 = min(xs_all), max(xs_all)
    y0, y1 = min(ys_all), max(ys_all)
    if x1 == x0:
        x0, x1 = x0 - 0.5, x1 + 0.5
    if y1 == y0:
        y0, y1 = y0 - 0.5, y1 + 0.5
    pad = 0.05 * (y1 - y0)
    y0, y1 = y0 - pad, y1 + pad
    pw = _W - _ML - _MR
    ph = _H - _MT - _MB

    def px(x):
        return _ML + pw * (x - x0) / (x1 - x0)

    def py(y):
        return _MT + ph * (1.0 - (y - y0) / (y1 - y0))

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2:.1f}" y="24" text-anchor="middle" '
        f'font-family="sans-serif" font-size="15">{_esc(title)}</text>',
        f'<rect x="{_ML}" y="{_MT}" width="{pw}" height="{ph}" fill="none" '
        f'stroke="#333" stroke-width="1"/>',
    ]
    for i in range(5):
        xt = x0 + (x1 - x0) * i / 4
        yt = y0 + (y1 - y0) * i / 4
        out.append(
            f'<line x1="{px(xt):.2f}" y1="{_MT + ph}" x2="{px(xt):.2f}" '
            f'y2="{_MT + ph + 5}" stroke="#333"/>'
        )
        out.append(
            f'<text x="{px(xt):.2f}" y="{_MT + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt(xt)}</text>'
        )
        out.append(
            f'<line x1="{_ML - 5}" y1="{py(yt):.2f}" x2="{_ML}" '
            f'y2="{py(yt):.2f}" stroke="#333"/>'
        )
        out.append(
            f'<text x="{_ML - 8}" y="{py(yt) + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{_fmt(yt)}</text>'
        )
    out.append(
        f'<text x="{_ML + pw / 2:.1f}" y="{_H - 12}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13">{_esc(xlabel)}</text>'
    )
    out.append(
        f'<text x="18" y="{_MT + ph / 2:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 18 {_MT + ph / 2:.1f})">{_esc(ylabel)}</text>'
    )
    for si, (label, xs, ys) in enumerate(series):
        color = _COLORS[si % len(_COLORS)]
        path = " ".join(
            f"{'M' if i == 0 else 'L'} {px(x):.2f} {py(y):.2f}"
            for i, (x, y) in enumerate(zip(xs, ys))
            if math.isfinite(y)
        )
        out.append(f'<path d="{path}" fill="none" stroke="{color}" stroke-width="1.6"/>')
        for x, y in zip(xs, ys):
            if math.isfinite(y):
                out.append(
                    f'<circle cx="{px(x):.2f}" cy="{py(y):.2f}" r="3" fill="{color}"/>'
                )
        ly = _MT + 16 + 16 * si
        out.append(
            f'<line x1="{_ML + pw - 120}" y1="{ly}" x2="{_ML + pw - 96}" y2="{ly}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(
            f'<text x="{_ML + pw - 90}" y="{ly + 4}" font-family="sans-serif" '
            f'font-size="11">{_esc(label)}</text>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt(v: float) -> str:
    return f"{v:.3g}"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
