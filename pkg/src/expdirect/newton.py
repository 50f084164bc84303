"""Newton polygon algebra for irregular differential-module germs.

The polygons here are the unbounded convex regions spanned by a horizontal
ray, a chain of finite edges of increasing slope, and a vertical ray.  Only
the finite edges carry data, stored as a slope-merged multiset of positive
(width, height) pairs anchored at the origin.  Minkowski sums of such regions
concatenate edge multisets; the vertical dilation relates the polygon before
and after ramification.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, getcontext
from fractions import Fraction

__all__ = [
    "NewtonPolygon",
    "elementary_region",
    "minkowski_sum",
    "slopes",
    "irregularity",
    "dilate_vertical",
    "one_slope_decomposition",
    "polygon_from_branches",
    "ramified_polygon",
    "polygon_svg",
]


def _frac(x) -> Fraction:
    f = Fraction(x)
    return f


@dataclass(frozen=True)
class NewtonPolygon:
    """Slope-merged finite edges (width, height), sorted by slope ascending."""

    edges: tuple[tuple[Fraction, Fraction], ...] = ()

    @staticmethod
    def from_edges(edges) -> "NewtonPolygon":
        merged: dict[Fraction, list[Fraction]] = {}
        for w, h in edges:
            w, h = _frac(w), _frac(h)
            if w <= 0 or h <= 0:
                raise ValueError(f"edge ({w}, {h}) must have positive width and height")
            s = h / w
            acc = merged.setdefault(s, [Fraction(0), Fraction(0)])
            acc[0] += w
            acc[1] += h
        ordered = tuple((merged[s][0], merged[s][1]) for s in sorted(merged))
        return NewtonPolygon(ordered)

    def vertices(self) -> list[tuple[Fraction, Fraction]]:
        """Boundary vertices from the origin, cumulative over edges."""
        pts = [(Fraction(0), Fraction(0))]
        x = y = Fraction(0)
        for w, h in self.edges:
            x += w
            y += h
            pts.append((x, y))
        return pts

    def width(self) -> Fraction:
        return sum((w for w, _ in self.edges), Fraction(0))

    def height(self) -> Fraction:
        return sum((h for _, h in self.edges), Fraction(0))


def elementary_region(m: int, p: int, q: int) -> NewtonPolygon:
    """Single-edge polygon (m*p, m*q) of one branch."""
    if m < 1 or p < 1 or q < 1:
        raise ValueError("m, p, q must be positive")
    return NewtonPolygon.from_edges([(Fraction(m * p), Fraction(m * q))])


def minkowski_sum(polys) -> NewtonPolygon:
    """Minkowski sum: the union of the edge multisets, merged by slope."""
    edges = []
    for poly in polys:
        edges.extend(poly.edges)
    return NewtonPolygon.from_edges(edges)


def slopes(poly: NewtonPolygon) -> set[Fraction]:
    return {h / w for w, h in poly.edges}


def irregularity(poly: NewtonPolygon) -> Fraction:
    """Total height of the finite edges."""
    return poly.height()


def dilate_vertical(poly: NewtonPolygon, ratio) -> NewtonPolygon:
    ratio = _frac(ratio)
    if ratio <= 0:
        raise ValueError("dilation ratio must be positive")
    return NewtonPolygon.from_edges([(w, h * ratio) for w, h in poly.edges])


def polygon_from_branches(branches) -> NewtonPolygon:
    return minkowski_sum(elementary_region(b.m, b.p, b.q) for b in branches)


def ramified_polygon(branches, p: int) -> NewtonPolygon:
    """Polygon after ramification of order p: heights scale by p."""
    return minkowski_sum(
        NewtonPolygon.from_edges([(Fraction(b.m * b.p), Fraction(p * b.m * b.q))])
        for b in branches
    )


def one_slope_decomposition(branches, p: int | None = None) -> dict[Fraction, tuple[tuple[str, ...], Fraction]]:
    """Group branches by their common post-ramification slope.

    Returns slope s -> (labels with p*q_l/p_l == s, total height p*q_l*m_l);
    p defaults to the lcm ramification order of the branches.
    """
    branches = list(branches)
    if p is None:
        from .branch import ramification_order

        p = ramification_order(branches)
    groups: dict[Fraction, tuple[list[str], Fraction]] = {}
    for b in branches:
        s = Fraction(p * b.q, b.p)
        labels, height = groups.setdefault(s, ([], Fraction(0)))
        labels.append(b.label)
        groups[s] = (labels, height + p * b.q * b.m)
    return {s: (tuple(labels), h) for s, (labels, h) in sorted(groups.items())}


def _fmt(x: Fraction, digits: int = 14) -> str:
    getcontext().prec = digits + 6
    d = Decimal(x.numerator) / Decimal(x.denominator)
    s = format(d.normalize(), "f")
    return s


def polygon_svg(poly: NewtonPolygon, *, scale: int = 40, pad: Fraction = Fraction(1)) -> str:
    """SVG drawing of the boundary with slope labels.

    The exact rational vertices are embedded in a data attribute; drawn
    coordinates carry at least 12 significant digits.
    """
    verts = poly.vertices()
    w = poly.width() + 2 * pad
    h = poly.height() + 2 * pad

    def sx(x: Fraction) -> str:
        return _fmt((x + pad) * scale)

    def sy(y: Fraction) -> str:
        return _fmt((h - (y + pad)) * scale)

    exact = ";".join(f"{x.numerator}/{x.denominator},{y.numerator}/{y.denominator}"
                     for x, y in verts)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_fmt(w * scale)}" '
        f'height="{_fmt(h * scale)}" data-vertices="{exact}">',
        '  <g fill="none" stroke="black" stroke-width="1.5">',
    ]
    # Horizontal ray into the region's left, vertical ray out of the top.
    x0, y0 = verts[0]
    xn, yn = verts[-1]
    lines.append(f'    <polyline points="{_fmt(Fraction(0))},{sy(y0)} {sx(x0)},{sy(y0)}" stroke-dasharray="4 3"/>')
    lines.append(f'    <polyline points="{sx(xn)},{sy(yn)} {sx(xn)},{_fmt(Fraction(0))}" stroke-dasharray="4 3"/>')
    if len(verts) > 1:
        pts = " ".join(f"{sx(x)},{sy(y)}" for x, y in verts)
        lines.append(f'    <polyline points="{pts}"/>')
    lines.append("  </g>")
    x = y = Fraction(0)
    for w_e, h_e in poly.edges:
        midx, midy = x + w_e / 2, y + h_e / 2
        s = h_e / w_e
        label = f"{s.numerator}" if s.denominator == 1 else f"{s.numerator}/{s.denominator}"
        lines.append(
            f'  <text x="{sx(midx)}" y="{sy(midy)}" font-size="12">{label}</text>'
        )
        x += w_e
        y += h_e
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
