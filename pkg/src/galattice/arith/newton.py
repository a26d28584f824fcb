"""Newton polygons of univariate polynomials over K."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .scalar import INF


@dataclass(frozen=True)
class NewtonPolygon:
    """Lower convex hull of (i, v(a_i)), as (slope, horizontal length) segments.

    ``zero_order`` is the order of vanishing at 0; those roots have valuation +inf.
    """

    segments: tuple
    zero_order: int = 0
    vertices: tuple = ()

    def root_valuations(self):
        """(valuation, multiplicity) pairs, largest valuation first."""
        out = [(INF, self.zero_order)] if self.zero_order else []
        out += [(-s, n) for s, n in self.segments]
        return out

    def slopes_multiset(self):
        out = []
        for s, n in self.segments:
            out += [s] * n
        return sorted(out)

    def length(self) -> int:
        return sum(n for _, n in self.segments)


def _val(c):
    v = c.valuation()
    if v is None:
        raise ValueError("coefficient %s has undetermined valuation" % c)
    return v


def newton_polygon(coeffs) -> NewtonPolygon:
    """Newton polygon of sum_i coeffs[i] z^i.

    ``coeffs`` may hold Scalars or TruncatedSeries (anything with ``valuation()``),
    or be a univariate MultiPoly with such coefficients.
    """
    if hasattr(coeffs, "terms") and hasattr(coeffs, "ring"):
        if coeffs.ring.nvars != 1:
            raise ValueError("newton_polygon needs a univariate polynomial")
        d = coeffs.total_degree()
        coeffs = [coeffs.coefficient((i,)) for i in range(d + 1)]
    pts = []
    for i, c in enumerate(coeffs):
        v = _val(c)
        if v != INF:
            pts.append((i, Fraction(v)))
    if not pts:
        raise ValueError("Newton polygon of the zero polynomial")
    zero_order = pts[0][0]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    segs = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segs.append((Fraction(y2 - y1) / (x2 - x1), x2 - x1))
    return NewtonPolygon(tuple(segs), zero_order, tuple(hull))
