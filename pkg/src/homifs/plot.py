"""CSV and SVG renderings of a level-k cover."""

from __future__ import annotations

from fractions import Fraction

from .ifs import CoverReport, Interval

WIDTH = 800
HEIGHT = 80
MARGIN = 20
BAR_Y = 30
BAR_H = 20


def cover_csv(cv: CoverReport) -> str:
    return "".join(f"{iv.lo},{iv.hi}\n" for iv in cv.intervals)


def _px(x: Fraction) -> str:
    # fixed rounding keeps the output byte-stable
    return f"{float(round(x, 3)):.3f}"


def cover_svg(cv: CoverReport, hull: Interval, title: str = "") -> str:
    """Minimal horizontal bar chart: the hull as axis, merged cover pieces as bars."""
    span = hull.width
    inner = WIDTH - 2 * MARGIN

    def x_of(v: Fraction) -> Fraction:
        return MARGIN + (v - hull.lo) / span * inner

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>',
    ]
    if title:
        esc = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        lines.append(f'<text x="{MARGIN}" y="16" font-family="monospace" font-size="11">{esc}</text>')
    axis_y = BAR_Y + BAR_H + 8
    lines.append(
        f'<line x1="{MARGIN}" y1="{axis_y}" x2="{WIDTH - MARGIN}" y2="{axis_y}" stroke="#000000" stroke-width="1"/>'
    )
    for label, v in (("lo", hull.lo), ("hi", hull.hi)):
        anchor = "start" if label == "lo" else "end"
        lines.append(
            f'<text x="{_px(x_of(v))}" y="{axis_y + 14}" font-family="monospace" font-size="10" '
            f'text-anchor="{anchor}">{v}</text>'
        )
    s = cv.scale
    for lo, hi in cv.union():
        x0, x1 = x_of(Fraction(lo, s)), x_of(Fraction(hi, s))
        lines.append(
            f'<rect x="{_px(x0)}" y="{BAR_Y}" width="{_px(x1 - x0)}" height="{BAR_H}" fill="#1f4e79"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
