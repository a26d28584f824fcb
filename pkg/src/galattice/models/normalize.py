"""Integral closure of a chart by the Grauert-Remmert criterion.

Each round takes the radical J of the singular-locus ideal, a nonzero d in J
and the module U = (dJ + I) : J, so that Hom(J, J) = U/d.  If U = dA the ring
is normal; otherwise the fractions u/d are adjoined as new variables and the
presentation is simplified by eliminating variables that occur linearly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Dict, List, Tuple

from ..arith.poly import MultiPoly, PolyRing
from ..ideals import GREVLEX, Ideal, MonomialOrder, poly_gcd, exact_div
from ..ideals.groebner import leading
from .chart import Chart, PreconditionError, chart_codim, jacobian_minors, verify_chart

Frac = Tuple[MultiPoly, MultiPoly]


class NormalizationError(ArithmeticError):
    pass


def _frac_simplify(num: MultiPoly, den: MultiPoly, I: Ideal) -> Frac:
    num = I.reduce(num)
    if not num:
        return num, den.ring.one()
    g = poly_gcd(num, den)
    if not g.is_constant():
        num, den = exact_div(num, g), exact_div(den, g)
    if den.is_constant():
        c = den.constant_coeff()
        return num * (1 / c), den.ring.one()
    lc = den.terms[leading(den.terms, GREVLEX)]
    return num * (1 / lc), den * (1 / lc)


def _frac_add(a: Frac, b: Frac) -> Frac:
    if a[1] == b[1]:
        return a[0] + b[0], a[1]
    return a[0] * b[1] + b[0] * a[1], a[1] * b[1]


def _frac_mul(a: Frac, b: Frac) -> Frac:
    return a[0] * b[0], a[1] * b[1]


def _eval_frac(f: MultiPoly, fracs: Dict[str, Frac], base: PolyRing, I0: Ideal) -> Frac:
    """Evaluate f (in the current presentation) as a fraction over the original ring."""
    out = (base.zero(), base.one())
    names = f.ring.names
    for e, c in f.terms.items():
        term = (base.const(c), base.one())
        for i, a in enumerate(e):
            for _ in range(a):
                term = _frac_mul(term, fracs[names[i]])
        out = _frac_add(out, term)
    return _frac_simplify(out[0], out[1], I0)


@dataclass
class NormalizationData:
    chart: Chart
    ring: PolyRing
    ideal: Ideal
    images: Dict[str, MultiPoly]          # original variable -> element of the new presentation
    fractions: Dict[str, Frac]            # new variable -> fraction over the original ring
    module_generators: List[Frac]
    denominator: MultiPoly
    equations: Dict[str, List[MultiPoly]]  # new variable -> monic equation coefficients (low first)
    conductor_witness: Ideal
    rounds: int
    verified: bool = False
    notes: list = field(default_factory=list)

    def image(self, f: MultiPoly) -> MultiPoly:
        """Image in the presentation of the normalization of an element of the original ring."""
        return self.ideal.reduce(f.substitute(self.images, self.ring))

    def as_chart(self) -> Chart:
        return Chart(self.ideal, (self.chart.name or "chart") + "_norm", True)

    def generator_strings(self):
        out = []
        for num, den in self.module_generators:
            if den.is_constant():
                out.append(num.to_str())
            else:
                n, d = num.to_str(), den.to_str()
                if len(num.terms) > 1:
                    n = "(%s)" % n
                if len(den.terms) > 1:
                    d = "(%s)" % d
                out.append("%s/%s" % (n, d))
        return out


def _singular_test_ideal(I: Ideal, ring: PolyRing):
    codim = ring.nvars - I.dimension()
    minors = jacobian_minors(I.groebner(), ring.names, codim, ring)
    S = I + minors
    if S.is_unit():
        return S
    return S.radical(verify=False)


def _pick_nzd(J: Ideal, I: Ideal) -> MultiPoly:
    cands = [g for g in J.groebner() if not I.contains(g)]
    if not cands:
        raise NormalizationError("test ideal lies inside I; the chart is not a domain")
    best_deg = min((g.total_degree(), len(g.terms)) for g in cands)
    tied = [g for g in cands if (g.total_degree(), len(g.terms)) == best_deg]
    return max(tied, key=lambda g: GREVLEX.key(leading(g.terms, GREVLEX)))


def _gr_step(I: Ideal, ring: PolyRing):
    """One Grauert-Remmert test. Returns (J, d, new numerators) with [] when normal."""
    J = _singular_test_ideal(I, ring)
    if J.is_unit():
        return J, ring.one(), []
    d = _pick_nzd(J, I)
    dJ = Ideal(ring, [d * g for g in J.gens]) + I
    U = dJ.quotient(J)
    base = I + [d]
    new = [u for u in U.groebner() if not base.contains(u)]
    return J, d, new


def _simplify(I: Ideal, fracs: Dict[str, Frac], images: Dict[str, MultiPoly], protect=("t",)):
    """Eliminate variables v with a relation c*v - h (c constant, h free of v)."""
    while True:
        ring = I.ring
        found = None
        gb = I.groebner()
        for g in sorted(gb, key=lambda g: (len(g.terms), g.total_degree())):
            for v in reversed(ring.names):
                if v in protect or g.degree_in(v) != 1:
                    continue
                i = ring.index(v)
                lin = [(e, c) for e, c in g.terms.items() if e[i]]
                if len(lin) == 1 and sum(lin[0][0]) == 1:
                    found = (v, g, lin[0][1])
                    break
            if found:
                break
        if not found:
            return I, fracs, images
        v, g, c = found
        rhs = (ring.monomial([1 if n == v else 0 for n in ring.names], c) - g) * (1 / c)
        names = [n for n in ring.names if n != v]
        small = PolyRing(names, ring.dom)
        rhs_s = rhs.to_ring(small)
        sub = {v: rhs_s}
        gens = [h.substitute(sub, small) for h in gb if h != g]
        I = Ideal(small, gens)
        images = {k: I.reduce(p.substitute(sub, small)) for k, p in images.items()}
        fracs = {k: f for k, f in fracs.items() if k != v}


def integral_equation(num: MultiPoly, den: MultiPoly, I0: Ideal) -> List[MultiPoly]:
    """Coefficients a_0..a_{n-1} (in the original ring) with z^n + sum a_i z^i = 0 for z = num/den."""
    ring = I0.ring
    z = ring.fresh_name("_z")
    big = ring.extend([z], front=True)
    Z = big.var(z)
    gens = [g.to_ring(big) for g in I0.gens] + [den.to_ring(big) * Z - num.to_ring(big)]
    J = Ideal(big, gens).saturate(den.to_ring(big))
    order = MonomialOrder.elimination(1)
    best = None
    for g in J.groebner(order):
        lm = leading(g.terms, order)
        if lm[0] and not any(lm[1:]):
            if best is None or lm[0] < best[0]:
                best = (lm[0], g)
    if best is None:
        raise NormalizationError("no monic integral equation for %s/%s" % (num, den))
    n, g = best
    coeffs = [ring.zero() for _ in range(n)]
    for e, c in g.terms.items():
        if e[0] < n:
            coeffs[e[0]] = coeffs[e[0]] + ring.monomial(e[1:], c)
    lc = g.terms[lm_pure(n, big.nvars)]
    return [I0.reduce(a * (1 / lc)) for a in coeffs]


def lm_pure(n, nv):
    return (n,) + (0,) * (nv - 1)


def normalize(c: Chart, max_rounds: int = 16) -> NormalizationData:
    """Integral closure of A in its fraction field (A a domain)."""
    if c._norm is not None:
        return c._norm
    if not c.asserted_domain:
        raise PreconditionError("normalize needs a domain; chart %s is not asserted to be one" % c.name)
    diag = verify_chart(c)
    I0 = c.ideal
    base = c.ring
    if I0.is_unit():
        raise PreconditionError("empty chart")
    fracs = {n: (base.var(n), base.one()) for n in base.names}
    images = {n: base.var(n) for n in base.names}
    I = I0
    notes = []
    if diag.regular:
        notes.append("regular chart: normal without iteration")
        data = NormalizationData(c, base, I0, images, {}, [(base.one(), base.one())], base.one(), {},
                                 Ideal.unit(base), 0, True, notes)
        c._norm = data
        return data
    rounds = 0
    while True:
        ring = I.ring
        J, d, new = _gr_step(I, ring)
        if not new:
            break
        rounds += 1
        if rounds > max_rounds:
            raise NormalizationError("normalization did not stabilize in %d rounds" % max_rounds)
        names = []
        for _ in new:
            names.append(PolyRing(list(ring.names) + names, ring.dom).fresh_name("w"))
        big = ring.extend(names)
        dd = d.to_ring(big)
        gens = [g.to_ring(big) for g in I.gens]
        dfrac = _eval_frac(d, fracs, base, I0)
        for w, u in zip(names, new):
            gens.append(dd * big.var(w) - u.to_ring(big))
            uf = _eval_frac(u, fracs, base, I0)
            fracs[w] = _frac_simplify(uf[0] * dfrac[1], uf[1] * dfrac[0], I0)
        I = Ideal(big, gens).saturate(dd)
        images = {k: p.to_ring(big) for k, p in images.items()}
        I, fracs, images = _simplify(I, fracs, images)
    ring = I.ring
    added = [n for n in ring.names if n not in base.names]
    # image of original variables that survived simplification
    images = {k: I.reduce(p) for k, p in images.items()}
    equations = {}
    for w in added:
        num, den = fracs[w]
        equations[w] = integral_equation(num, den, I0)
    # module generators: monomials in the new variables below their equation degrees
    degs = [len(equations[w]) for w in added]
    mons = []
    for exps in product(*[range(n) for n in degs]):
        f = (base.one(), base.one())
        for w, a in zip(added, exps):
            for _ in range(a):
                f = _frac_mul(f, fracs[w])
        mons.append(_frac_simplify(f[0], f[1], I0))
    common = base.one()
    for _, den in mons:
        if not den.is_constant():
            common = exact_div(common * den, poly_gcd(common, den))
    gens_common = []
    for num, den in mons:
        gens_common.append((num, den))
    data = NormalizationData(c, ring, I, images, {w: fracs[w] for w in added}, gens_common, common,
                             equations, J, rounds, False, notes)
    data.verified = verify_normalization(data)
    c._norm = data
    return data


def verify_normalization(data: NormalizationData) -> bool:
    """Re-run the Grauert-Remmert test on the output and check every integral equation."""
    I0 = data.chart.ideal
    ring = data.ring
    _, _, new = _gr_step(data.ideal, ring)
    if new:
        return False
    for w, coeffs in data.equations.items():
        num, den = data.fractions[w]
        # num^n + sum a_i num^i den^(n-i) = 0 in A
        n = len(coeffs)
        acc = num ** n
        for i, a in enumerate(coeffs):
            acc = acc + a * num ** i * den ** (n - i)
        if not I0.contains(acc):
            return False
    # images satisfy the original relations
    for g in I0.gens:
        if data.ideal.reduce(g.substitute(data.images, ring)):
            return False
    return True
