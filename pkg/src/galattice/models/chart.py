"""Affine charts A = k[t, x1..xn]/I of flat R-models and their diagnostics."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from ..arith.poly import MultiPoly, PolyRing
from ..ideals import Ideal


class PreconditionError(ValueError):
    """An input violates the mathematical preconditions of an operation."""


class Chart:
    """Spec A with A = k[t, x...]/I; the generic fiber is Spec A[1/t]."""

    def __init__(self, ideal: Ideal, name: str = "", domain: bool = True):
        if "t" not in ideal.ring:
            raise PreconditionError("chart ring needs the variable t")
        self.ideal = ideal
        self.ring = ideal.ring
        self.name = name
        self.asserted_domain = domain
        self._diag = None
        self._norm = None

    @classmethod
    def from_polys(cls, ring: PolyRing, gens: Sequence[MultiPoly], name: str = "", domain: bool = True):
        return cls(Ideal(ring, gens), name, domain)

    @property
    def k(self):
        return self.ring.dom

    @property
    def xvars(self):
        return [n for n in self.ring.names if n != "t"]

    @property
    def t(self) -> MultiPoly:
        return self.ring.var("t")

    def fiber_ideal(self) -> Ideal:
        return self.ideal + [self.t]

    def localize(self, f: MultiPoly, name: Optional[str] = None) -> "Chart":
        """The chart of A_f, presented with one extra variable inverting f."""
        v = self.ring.fresh_name("_inv")
        big = self.ring.extend([v])
        gens = [g.to_ring(big) for g in self.ideal.gens]
        gens.append(big.var(v) * f.to_ring(big) - big.one())
        return Chart(Ideal(big, gens), name or (self.name + "_loc"), self.asserted_domain)

    def __repr__(self):
        return "Chart(%s: k[%s]/(%s))" % (
            self.name or "?", ", ".join(self.ring.names), ", ".join(g.to_str() for g in self.ideal.gens))


@dataclass
class ChartDiagnostics:
    t_torsion_free: bool
    asserted_domain: bool
    generic_fiber_smooth: Optional[bool]
    regular: Optional[bool]
    codim: int
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {
            "t_torsion_free": self.t_torsion_free,
            "asserted_domain": self.asserted_domain,
            "generic_fiber_smooth": self.generic_fiber_smooth,
            "regular": self.regular,
            "codim": self.codim,
            "notes": list(self.notes),
        }


def det(m):
    """Determinant of a small square matrix of ring elements (Laplace expansion)."""
    n = len(m)
    if n == 0:
        return None
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    out = None
    for j in range(n):
        if not m[0][j]:
            continue
        sub = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * det(sub)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out if out is not None else m[0][0] - m[0][0]


def jacobian_minors(gens: Sequence[MultiPoly], variables: Sequence[str], c: int, ring: PolyRing):
    """All nonzero c x c minors of the Jacobian of ``gens`` in ``variables``."""
    if c == 0:
        return [ring.one()]
    jac = [[g.derivative(v) for v in variables] for g in gens]
    out = []
    seen = set()
    for rows in combinations(range(len(gens)), c):
        for cols in combinations(range(len(variables)), c):
            d = det([[jac[i][j] for j in cols] for i in rows])
            if d and d not in seen:
                seen.add(d)
                out.append(d)
    return out


def chart_codim(c: Chart) -> int:
    return c.ring.nvars - c.ideal.dimension()


def verify_chart(c: Chart) -> ChartDiagnostics:
    """t-torsion, generic-fiber smoothness and absolute regularity (Jacobian criterion)."""
    if c._diag is not None:
        return c._diag
    I = c.ideal
    t = c.t
    notes = []
    sat = I.saturate(t)
    torsion_free = sat == I
    if not torsion_free:
        notes.append("t-torsion: I : t^oo strictly contains I")
    if I.is_unit():
        notes.append("empty chart (unit ideal)")
        diag = ChartDiagnostics(torsion_free, c.asserted_domain, True, True, c.ring.nvars + 1, notes)
        c._diag = diag
        return diag
    codim = chart_codim(c)
    gens = I.groebner()
    minors_x = jacobian_minors(gens, c.xvars, codim, c.ring)
    smooth = (I + minors_x).radical_membership(t)
    if not smooth:
        notes.append("generic fiber singular (Jacobian criterion)")
    minors_all = jacobian_minors(gens, c.ring.names, codim, c.ring)
    regular = (I + minors_all).is_unit()
    diag = ChartDiagnostics(torsion_free, c.asserted_domain, smooth, regular, codim, notes)
    c._diag = diag
    return diag
