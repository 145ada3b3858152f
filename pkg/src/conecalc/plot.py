"""SVG heatmaps of cone-sum densities.

Every cell is evaluated exactly at a jittered generic point inside it;
floats appear only when the value is mapped to a colour.  Cells carry the
exact value (``data-density``) and the point it was taken at
(``data-point``), so a plot can be audited against :func:`density_at`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence
from xml.sax.saxutils import escape

from .cones import SignedConeSum
from .density import density_function
from .exact import dot, format_fraction
from .localization import FixedPointDatum, decompose_multiplicity, positive_part
from .sampling import GenericSampler

WIDTH = 600
STRIP_HEIGHT = 60
FLIPPED = "#00bcd4"


@dataclass
class Overlay:
    apex: tuple
    rays: tuple
    flipped: tuple
    lineality: tuple = ()


def parse_window(text: str, rank: int) -> list[tuple[Fraction, Fraction]]:
    """``"a:b,c:d"`` -> ``[(a, b), (c, d)]``."""
    parts = text.split(",")
    if len(parts) != rank:
        raise ValueError(f"window {text!r} needs {rank} ranges")
    out = []
    for p in parts:
        lo, sep, hi = p.partition(":")
        if not sep:
            raise ValueError(f"range {p!r} is not of the form a:b")
        lo, hi = Fraction(lo), Fraction(hi)
        if lo >= hi:
            raise ValueError(f"empty range {p!r}")
        out.append((lo, hi))
    return out


def heckman_overlays(data: Sequence[FixedPointDatum], v: Sequence) -> list[Overlay]:
    """Apexes and rays of the Heckman terms, marking the rays that were flipped."""
    out = []
    for d in data:
        dec = decompose_multiplicity(d, v)
        for subset in dec.coefficients:
            rays = tuple(positive_part(w, v) for w in subset)
            out.append(Overlay(d.moment, rays, tuple(dot(v, w) < 0 for w in subset)))
    return out


def term_overlays(cone_sum: SignedConeSum) -> list[Overlay]:
    return [Overlay(t.apex, t.rays, (False,) * len(t.rays), t.lineality) for t in cone_sum.terms]


def _colour(value: Fraction, scale: Fraction) -> str:
    if not value or not scale:
        return "#ffffff"
    s = min(1.0, abs(float(value / scale)))
    target = (178, 24, 43) if value > 0 else (33, 102, 172)
    rgb = [round(255 + (c - 255) * s) for c in target]
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def density_grid(cone_sum: SignedConeSum, window, res: int, seed: int | None = None) -> list[list[tuple]]:
    """Rows (top to bottom) of ``(point, density)`` at one generic point per cell."""
    f = density_function(cone_sum)
    sampler = GenericSampler(seed)
    (x0, x1) = window[0]
    dx = (x1 - x0) / res
    if cone_sum.rank == 1:
        return [[sampler.draw([(x0 + i * dx, x0 + (i + 1) * dx)], f) for i in range(res)]]
    (y0, y1) = window[1]
    dy = (y1 - y0) / res
    rows = []
    for j in reversed(range(res)):
        row = []
        for i in range(res):
            box = [(x0 + i * dx, x0 + (i + 1) * dx), (y0 + j * dy, y0 + (j + 1) * dy)]
            row.append(sampler.draw(box, f))
        rows.append(row)
    return rows


def render_svg(
    cone_sum: SignedConeSum,
    window: Sequence[tuple],
    res: int,
    overlays: Sequence[Overlay] = (),
    title: str = "",
    seed: int | None = None,
) -> str:
    if cone_sum.rank not in (1, 2):
        raise ValueError("only rank 1 and rank 2 sums can be plotted")
    grid = density_grid(cone_sum, window, res, seed)
    (x0, x1) = window[0]
    height = STRIP_HEIGHT if cone_sum.rank == 1 else WIDTH
    y0, y1 = window[1] if cone_sum.rank == 2 else (Fraction(-1), Fraction(1))
    cw, ch = WIDTH / res, height / len(grid)

    def px(p) -> tuple[float, float]:
        y = p[1] if len(p) > 1 else 0
        return (float((p[0] - x0) / (x1 - x0)) * WIDTH, float((y1 - y) / (y1 - y0)) * height)

    scale = max((abs(d) for row in grid for _, d in row), default=Fraction(0))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{height + 30}" '
        f'viewBox="0 0 {WIDTH} {height + 30}">',
        f"<title>{escape(title)}</title>",
        '<g id="density" shape-rendering="crispEdges">',
    ]
    for r, row in enumerate(grid):
        i = 0
        # merge runs of equal value along a row
        while i < len(row):
            j = i
            while j + 1 < len(row) and row[j + 1][1] == row[i][1]:
                j += 1
            point, value = row[i]
            out.append(
                f'<rect x="{i * cw:.3f}" y="{r * ch:.3f}" width="{(j - i + 1) * cw:.3f}" height="{ch:.3f}" '
                f'fill="{_colour(value, scale)}" data-density="{format_fraction(value)}" '
                f'data-point="{",".join(format_fraction(c) for c in point)}"/>'
            )
            i = j + 1
    out.append("</g>")
    out.append('<g id="axes" stroke="#999999" stroke-width="0.5">')
    if x0 < 0 < x1:
        ax = px((Fraction(0), Fraction(0)))[0]
        out.append(f'<line x1="{ax:.3f}" y1="0" x2="{ax:.3f}" y2="{height}"/>')
    if cone_sum.rank == 2 and y0 < 0 < y1:
        ay = px((Fraction(0), Fraction(0)))[1]
        out.append(f'<line x1="0" y1="{ay:.3f}" x2="{WIDTH}" y2="{ay:.3f}"/>')
    out.append("</g>")
    out.append('<g id="cones" stroke-width="1.5" fill="none">')
    reach = max(x1 - x0, y1 - y0) * 2
    for ov in overlays:
        ax, ay = px(ov.apex)
        for ray, flipped in zip(ov.rays, ov.flipped):
            norm = max(abs(c) for c in ray)
            end = tuple(a + reach * c / norm for a, c in zip(ov.apex, ray))
            ex, ey = px(end)
            colour = FLIPPED if flipped else "#000000"
            out.append(
                f'<line x1="{ax:.3f}" y1="{ay:.3f}" x2="{ex:.3f}" y2="{ey:.3f}" stroke="{colour}" '
                f'data-flipped="{str(flipped).lower()}"/>'
            )
        for g in ov.lineality:
            norm = max(abs(c) for c in g)
            a = px(tuple(p - reach * c / norm for p, c in zip(ov.apex, g)))
            b = px(tuple(p + reach * c / norm for p, c in zip(ov.apex, g)))
            out.append(
                f'<line x1="{a[0]:.3f}" y1="{a[1]:.3f}" x2="{b[0]:.3f}" y2="{b[1]:.3f}" '
                'stroke="#555555" stroke-dasharray="4 3"/>'
            )
        out.append(f'<circle cx="{ax:.3f}" cy="{ay:.3f}" r="3" fill="#000000"/>')
    out.append("</g>")
    label = f"{title}  max |density| = {format_fraction(scale)}"
    out.append(f'<text x="4" y="{height + 20}" font-family="sans-serif" font-size="12">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
