"""Convex polygons through partial sums of sorted slope sequences."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactlin import as_vector, format_fraction

__all__ = ["Polygon", "polygon_of", "newton_above_hodge", "render_svg"]


@dataclass(frozen=True)
class Polygon:
    vertices: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if not self.vertices or self.vertices[0] != (0, 0):
            raise ValueError("polygon must start at (0, 0)")
        slopes = [b[1] - a[1] for a, b in zip(self.vertices, self.vertices[1:])]
        if any(s > t for s, t in zip(slopes, slopes[1:])):
            raise ValueError("polygon is not convex")

    @property
    def heights(self) -> tuple[Fraction, ...]:
        return tuple(y for _, y in self.vertices)

    def to_json(self) -> list[list[str]]:
        return [[str(x), format_fraction(y)] for x, y in self.vertices]


def polygon_of(r: Sequence) -> Polygon:
    r = as_vector(r)
    if any(a > b for a, b in zip(r, r[1:])):
        raise ValueError(f"slopes {tuple(map(str, r))} are not increasing")
    verts = [(0, Fraction(0))]
    for k, x in enumerate(r, start=1):
        verts.append((k, verts[-1][1] + x))
    return Polygon(tuple(verts))


def newton_above_hodge(newton: Polygon, hodge: Polygon) -> bool:
    if len(newton.vertices) != len(hodge.vertices):
        raise ValueError("polygons have different lengths")
    n, h = newton.heights, hodge.heights
    return n[-1] == h[-1] and all(a >= b for a, b in zip(n, h))


def _decimal(x: Fraction) -> str:
    # two decimals, computed exactly
    n = round(x * 100)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 100}.{n % 100:02d}"


def render_svg(newton: Polygon, hodge: Polygon, width: int = 400, height: int = 300) -> str:
    """Static plot of two polygons (Newton solid, Hodge dashed)."""
    pts = newton.vertices + hodge.vertices
    xmax = max(x for x, _ in pts) or 1
    ymin = min(y for _, y in pts)
    ymax = max(y for _, y in pts)
    yspan = (ymax - ymin) or 1
    pad = 30

    def sx(x):
        return pad + Fraction(width - 2 * pad) * x / xmax

    def sy(y):
        return height - pad - Fraction(height - 2 * pad) * (y - ymin) / yspan

    def path(poly):
        return " ".join(f"{_decimal(sx(x))},{_decimal(sy(y))}" for x, y in poly.vertices)

    dots = "".join(
        f'<circle cx="{_decimal(sx(x))}" cy="{_decimal(sy(y))}" r="3" fill="{c}"/>'
        for poly, c in ((newton, "#1f4e79"), (hodge, "#a33"))
        for x, y in poly.vertices)
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">'
        f'<rect width="100%" height="100%" fill="white"/>'
        f'<polyline points="{path(hodge)}" fill="none" stroke="#a33" stroke-dasharray="6,4" stroke-width="2"/>'
        f'<polyline points="{path(newton)}" fill="none" stroke="#1f4e79" stroke-width="2"/>'
        f'{dots}'
        f'<text x="{pad}" y="18" font-size="12" fill="#1f4e79">Newton</text>'
        f'<text x="{pad + 60}" y="18" font-size="12" fill="#a33">Hodge</text>'
        "</svg>\n"
    )
