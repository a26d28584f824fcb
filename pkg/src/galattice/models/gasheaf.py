"""Sections of the twisted tame sheaf G_a(r) on a chart.

On a chart with normalization B, G_a(r) consists of the a in A[1/t] with
a^m / t^n in sqrt(tB) for r = n/m; for integer r the sections are t^r sqrt(tB).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from ..arith.poly import MultiPoly, PolyRing
from ..ideals import Ideal, MonomialOrder
from ..ideals.groebner import leading
from .chart import Chart, PreconditionError, verify_chart
from .normalize import NormalizationData, normalize


@dataclass
class GaSectionModule:
    chart: Chart
    twist: int
    generators: List[MultiPoly]   # elements g of B; the sections are t^twist * g
    norm: NormalizationData
    fiber_radical: Ideal

    def shifted_generators(self) -> List[str]:
        """Sections t^twist * g as strings."""
        out = []
        for g in self.generators:
            if self.twist >= 0:
                out.append((g * g.ring.var("t") ** self.twist).to_str())
                continue
            i = g.ring.index("t")
            low = min(e[i] for e in g.terms)
            d = -self.twist - min(low, -self.twist)
            g = MultiPoly(g.ring, {e[:i] + (e[i] - (-self.twist - d),) + e[i + 1:]: c for e, c in g.terms.items()})
            s = g.to_str()
            if not d:
                out.append(s)
                continue
            if len(g.terms) > 1:
                s = "(%s)" % s
            out.append("%s/%s" % (s, "t" if d == 1 else "t^%d" % d))
        return out

    def contains(self, p: MultiPoly, t_power: int = 0) -> bool:
        """Is p / t^t_power (p in B) a section?"""
        return ga_membership_normalized(self.norm, p, t_power, Fraction(self.twist)).member


def _check_chart(c: Chart) -> NormalizationData:
    diag = verify_chart(c)
    if not diag.t_torsion_free:
        raise PreconditionError("chart %s has t-torsion" % (c.name or c))
    if diag.generic_fiber_smooth is False:
        raise PreconditionError("chart %s: generic fiber is not smooth, normality not established" % (c.name or c))
    return normalize(c)


def fiber_radical(norm: NormalizationData) -> Ideal:
    """sqrt(I_B + (t)) in the presentation ring of B, with minimal generators."""
    cache = norm.__dict__.setdefault("_fiber_radical", None)
    if cache is not None:
        return cache
    ring = norm.ring
    rad = (norm.ideal + [ring.var("t")]).radical()
    gens = _minimal_generators(rad.groebner(), norm.ideal)
    out = Ideal(ring, gens)
    norm.__dict__["_fiber_radical"] = out
    return out


def _minimal_generators(gens, base: Ideal):
    """Greedily drop generators lying in the ideal of the others plus ``base``."""
    gens = [base.reduce(g) for g in gens]
    gens = [g for g in gens if g]
    # try to drop the most complicated first
    gens.sort(key=lambda g: (g.total_degree(), len(g.terms), g.to_str()))
    i = len(gens) - 1
    while i >= 0:
        others = gens[:i] + gens[i + 1:]
        if (base + others).contains(gens[i]):
            gens = others
        i -= 1
    return [g.monic() for g in gens]


def ga_sections(c: Chart, r: int = 0) -> GaSectionModule:
    """Generators of t^r sqrt(tB) for integer r."""
    if int(r) != r:
        raise PreconditionError("section modules are computed for integer twists only")
    norm = _check_chart(c)
    rad = fiber_radical(norm)
    return GaSectionModule(c, int(r), list(rad.gens), norm, rad)


@dataclass
class MembershipCertificate:
    member: bool
    route: str
    element: str
    exponent: Optional[int] = None   # smallest s <= 8 with q^s in I_B + (t), when found
    detail: List[str] = field(default_factory=list)

    def as_dict(self):
        return {"member": self.member, "route": self.route, "element": self.element,
                "power": self.exponent, "detail": list(self.detail)}


def _power_witness(q: MultiPoly, J: Ideal, bound: int = 8) -> Optional[int]:
    acc = q
    for s in range(1, bound + 1):
        if J.contains(acc):
            return s
        acc = acc * q
    return None


def ga_membership(a: MultiPoly, c: Chart, r=0, t_power: int = 0) -> MembershipCertificate:
    """Decide a / t^t_power in G_a(r) on c; ``a`` lives in the chart ring or in
    the presentation ring of the normalization."""
    norm = _check_chart(c)
    if a.ring == c.ring:
        p = norm.image(a)
    elif a.ring == norm.ring:
        p = norm.ideal.reduce(a)
    else:
        p = a.to_ring(norm.ring)
    return ga_membership_normalized(norm, p, t_power, Fraction(r))


def ga_membership_normalized(norm: NormalizationData, p: MultiPoly, k: int, r: Fraction) -> MembershipCertificate:
    r = Fraction(r)
    n, m = r.numerator, r.denominator
    ring = norm.ring
    t = ring.var("t")
    fiber = norm.ideal + [t]
    e = k * m + n
    pm = p ** m
    desc = "(%s)^%d/t^%d" % (p.to_str(), m, e) if e else "(%s)^%d" % (p.to_str(), m)
    if e <= 0:
        q = pm * t ** (-e)
        member = fiber.radical_membership(q)
        cert = MembershipCertificate(member, "rabinowitsch", q.to_str())
        if member:
            cert.exponent = _power_witness(q, fiber)
            cert.detail.append("1 in I + (t) + (1 - w*q)")
        else:
            cert.detail.append("I + (t) + (1 - w*q) is a proper ideal")
        return cert
    # a^m / t^e must lie in B before it can be in sqrt(tB)
    if not (norm.ideal + [t ** e]).contains(pm):
        return MembershipCertificate(False, "not-integral", desc,
                                     detail=["%s not in I + (t^%d)" % (pm.to_str(), e)])
    q0 = _divide_by_t_power(norm.ideal, pm, e)
    member = fiber.radical_membership(q0)
    cert = MembershipCertificate(member, "rabinowitsch", q0.to_str())
    cert.detail.append("%s = t^%d * (%s) in B" % (pm.to_str(), e, q0.to_str()))
    if member:
        cert.exponent = _power_witness(q0, fiber)
    return cert


def _divide_by_t_power(I: Ideal, f: MultiPoly, e: int) -> MultiPoly:
    """The q in B with t^e q = f (requires f in I + (t^e))."""
    ring = I.ring
    z = ring.fresh_name("_q")
    big = ring.extend([z], front=True)
    T = big.var("t")
    gens = [g.to_ring(big) for g in I.gens] + [T ** e * big.var(z) - f.to_ring(big)]
    J = Ideal(big, gens).saturate(T)
    order = MonomialOrder.elimination(1)
    for g in J.groebner(order):
        lm = leading(g.terms, order)
        if lm[0] == 1 and not any(lm[1:]):
            q = big.var(z) - g
            return I.reduce(q.to_ring(ring))
    raise ArithmeticError("%s is not divisible by t^%d in B" % (f, e))
