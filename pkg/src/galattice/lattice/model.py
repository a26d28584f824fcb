"""Multigraded projective models over R and their chart covers.

A model is S/I with S = k[T (graded blocks), t] and I multihomogeneous and
t-saturated.  A chart picks one variable per block; its affine ring is the
degree-zero part of (S/I)[1/m], presented by setting the chosen variables to 1.
Blowups add a block W with the Rees relations; products with P^1 add a block U.
"""

from __future__ import annotations

from itertools import combinations, product
from typing import Dict, List, Optional, Sequence, Tuple

from ..arith.field import BaseField
from ..arith.poly import MultiPoly, PolyRing
from ..ideals import Ideal
from ..models.chart import Chart, PreconditionError, verify_chart
from ..models.normalize import normalize


def _fresh(names, base):
    i = 0
    while "%s%d" % (base, i) in names:
        i += 1
    return "%s%d" % (base, i)


class ProjModel:
    """Proper model given by a multigraded presentation and a chart cover."""

    def __init__(self, k: BaseField, blocks: Sequence[Sequence[str]], gens: Sequence[MultiPoly],
                 name: str = "", charts: Optional[List[Tuple[int, ...]]] = None, check: bool = True):
        self.k = k
        self.blocks = [list(b) for b in blocks]
        names = [n for b in self.blocks for n in b]
        if "t" in names or len(set(names)) != len(names):
            raise PreconditionError("graded variables must be distinct and different from t")
        self.ring = PolyRing(names + ["t"], k)
        self.ngraded = len(names)
        self.block_of = []
        for bi, b in enumerate(self.blocks):
            self.block_of.extend([bi] * len(b))
        self.name = name
        gens = [g.to_ring(self.ring) if g.ring != self.ring else g for g in gens]
        gens = [g for g in gens if g]
        if check:
            for g in gens:
                if len({self.degree(e) for e in g.terms}) > 1:
                    raise PreconditionError("generator %s is not homogeneous" % g.to_str())
        self.ideal = Ideal(self.ring, gens)
        if check and self.ideal.saturate(self.t) != self.ideal:
            raise PreconditionError("model ideal has t-torsion (not t-saturated)")
        if charts is None:
            offsets = []
            pos = 0
            for b in self.blocks:
                offsets.append(list(range(pos, pos + len(b))))
                pos += len(b)
            charts = list(product(*offsets))
        self.charts = [tuple(c) for c in charts]
        self._sat: Dict[Tuple[int, ...], Ideal] = {}
        self._fiber_radical = None
        self._chart_objs: Dict[int, Chart] = {}

    # basic data ---------------------------------------------------------------
    @property
    def t(self) -> MultiPoly:
        return self.ring.var("t")

    @property
    def graded_names(self):
        return self.ring.names[:self.ngraded]

    def degree(self, e) -> Tuple[int, ...]:
        d = [0] * len(self.blocks)
        for i in range(self.ngraded):
            if e[i]:
                d[self.block_of[i]] += e[i]
        return tuple(d)

    def chart_exps(self, sigma: Sequence[int]) -> Tuple[int, ...]:
        """Exponent vector of the product of the chart monomials indexed by sigma."""
        e = [0] * self.ring.nvars
        for c in sigma:
            for i in self.charts[c]:
                e[i] += 1
        return tuple(e)

    def monomial(self, e) -> MultiPoly:
        return self.ring.monomial(e)

    def saturated_ideal(self, sigma: Tuple[int, ...]) -> Ideal:
        """I : m_sigma^infinity."""
        s = self._sat.get(sigma)
        if s is None:
            m = self.monomial(self.chart_exps(sigma))
            s = self.ideal.saturate(m) if self.ideal.gens else self.ideal
            self._sat[sigma] = s
        return s

    def fiber_radical(self) -> Ideal:
        """sqrt(I + (t)), the ideal of the reduced special fiber."""
        if self._fiber_radical is None:
            self._fiber_radical = (self.ideal + [self.t]).radical(verify=False)
        return self._fiber_radical

    # charts ---------------------------------------------------------------------
    def chart(self, c: int) -> Chart:
        ch = self._chart_objs.get(c)
        if ch is not None:
            return ch
        chosen = set(self.charts[c])
        keep = [n for i, n in enumerate(self.graded_names) if i not in chosen] + ["t"]
        ring = PolyRing(keep, self.k)
        sub = {self.ring.names[i]: ring.one() for i in chosen}
        gens = [g.substitute(sub, ring) for g in self.ideal.gens]
        ch = Chart(Ideal(ring, [g for g in gens if g]), self.chart_name(c), True)
        self._chart_objs[c] = ch
        return ch

    def chart_name(self, c: int) -> str:
        return "D(%s)" % "*".join(self.ring.names[i] for i in self.charts[c])

    def dehomogenize(self, f: MultiPoly, c: int) -> MultiPoly:
        ch = self.chart(c)
        sub = {self.ring.names[i]: ch.ring.one() for i in self.charts[c]}
        return f.substitute(sub, ch.ring)

    def transition(self, i: int, j: int):
        """Coordinates of chart i as fractions (numerator, denominator) in chart j."""
        ci, cj = self.chart(i), self.chart(j)
        out = {}
        chosen_i = self.charts[i]
        for n in ci.xvars:
            vi = self.ring.index(n)
            base = chosen_i[self.block_of[vi]]
            num = self.dehomogenize(self.ring.var(n), j)
            den = self.dehomogenize(self.ring.monomial([1 if q == base else 0 for q in range(self.ring.nvars)]), j)
            out[n] = (num, den)
        return out

    def check_transitions(self) -> bool:
        """Transition maps compose on every triple overlap (as fractions of monomials)."""
        n = len(self.charts)
        trans = {(i, j): self.transition(i, j) for i in range(n) for j in range(n)}
        for i, j, l in product(range(n), repeat=3):
            tij, tjl, til = trans[(i, j)], trans[(j, l)], trans[(i, l)]
            cl = self.chart(l).ring
            for name, (num, den) in tij.items():
                # substitute chart-j coordinates by their chart-l fractions
                a_num, a_den = _frac_subst(num, tjl, cl), _frac_subst(den, tjl, cl)
                b_num, b_den = til[name]
                if a_num[0] * a_den[1] * b_den != b_num * a_num[1] * a_den[0]:
                    return False
        return True

    def verify(self, need_normal: bool = False):
        """Diagnostics of every chart; raises PreconditionError on t-torsion or (optionally)
        non-normal charts."""
        out = []
        for c in range(len(self.charts)):
            ch = self.chart(c)
            if ch.ideal.is_unit():
                out.append(None)
                continue
            diag = verify_chart(ch)
            if not diag.t_torsion_free:
                raise PreconditionError("chart %s has t-torsion" % ch.name)
            if need_normal and not diag.regular:
                data = normalize(ch)
                if data.fractions:
                    raise PreconditionError("chart %s is not normal" % ch.name)
            out.append(diag)
        return out

    def describe(self) -> dict:
        return {
            "name": self.name,
            "blocks": [list(b) for b in self.blocks],
            "ideal": [g.to_str() for g in self.ideal.gens],
            "charts": [self.chart_name(c) for c in range(len(self.charts))],
        }

    def __repr__(self):
        return "ProjModel(%s, blocks=%s, ideal=[%s], %d charts)" % (
            self.name, self.blocks, ", ".join(g.to_str() for g in self.ideal.gens), len(self.charts))


def _frac_subst(f: MultiPoly, fracs, ring: PolyRing):
    """Substitute fractions (num, den) into f; result as (num, den) in ``ring``."""
    terms = []
    dens = []
    for e, c in f.terms.items():
        num, den = ring.const(c), ring.one()
        for i, a in enumerate(e):
            if a:
                n = f.ring.names[i]
                if n in fracs:
                    fn, fd = fracs[n]
                    num, den = num * fn ** a, den * fd ** a
                else:
                    num = num * ring.var(n) ** a
        terms.append((num, den))
        dens.append(den)
    common = ring.one()
    for d in dens:
        common = common * d
    acc = ring.zero()
    for i, (num, _) in enumerate(terms):
        prod = num
        for j, d in enumerate(dens):
            if j != i:
                prod = prod * d
        acc = acc + prod
    return acc, common


def build_proj_model(k: BaseField, variables: Sequence[str], gens: Sequence[MultiPoly],
                     name: str = "") -> ProjModel:
    """Closed subscheme of P^m_R with the standard cover D+(T_i)."""
    ring = PolyRing(list(variables) + ["t"], k)
    gens = [g.to_ring(ring) if g.ring != ring else g for g in gens]
    return ProjModel(k, [list(variables)], gens, name)


def _center_unit_on(M: ProjModel, c: int, g: MultiPoly) -> bool:
    ch = M.chart(c)
    return (ch.ideal + [M.dehomogenize(g, c)]).is_unit()


def blowup_model(M: ProjModel, center: Sequence[MultiPoly], name: str = "") -> ProjModel:
    """Blowup of M along the ideal generated by ``center`` (homogeneous, one degree)."""
    center = [g.to_ring(M.ring) if g.ring != M.ring else g for g in center]
    if not center:
        raise PreconditionError("empty center")
    center = [g for g in center if g]
    if not center:
        raise PreconditionError("zero center")
    degs = {M.degree(e) for g in center for e in g.terms}
    if len(degs) != 1:
        raise PreconditionError("center generators must be homogeneous of one common degree")
    if any(g.is_constant() for g in center):
        return M
    for c in range(len(M.charts)):
        ch = M.chart(c)
        Cc = ch.ideal + [M.dehomogenize(g, c) for g in center]
        if Cc.saturate(ch.t) != Cc and not Cc.radical_membership(ch.t):
            raise PreconditionError("center has t-torsion on %s and is not admissible there" % ch.name)
    names = list(M.graded_names)
    W = []
    for _ in center:
        W.append(_fresh(names + W, "W"))
    blocks = [list(b) for b in M.blocks] + [W]
    big = PolyRing(names + W + ["t"], M.k)
    gs = [g.to_ring(big) for g in center]
    rel = [g.to_ring(big) for g in M.ideal.gens]
    for i, j in combinations(range(len(center)), 2):
        rel.append(gs[i] * big.var(W[j]) - gs[j] * big.var(W[i]))
    J = Ideal(big, rel).saturate_ideal(Ideal(big, gs))
    J = J.saturate(big.var("t"))
    # charts: over a chart where some generator is a unit one W-chart suffices
    base = len(names)
    charts = []
    for c in range(len(M.charts)):
        unit = None
        for j, g in enumerate(center):
            ch = M.chart(c)
            if ch.ideal.is_unit():
                break
            gd = M.dehomogenize(g, c)
            if (ch.ideal + [gd]).is_unit():
                unit = j
                break
        if M.chart(c).ideal.is_unit():
            continue
        js = [unit] if unit is not None else range(len(center))
        for j in js:
            charts.append(tuple(M.charts[c]) + (base + j,))
    out = ProjModel(M.k, blocks, J.groebner(), name or ("Bl(%s)" % M.name), charts)
    out.blowup_of = (M, center)
    return out


def product_with_p1(M: ProjModel, name: str = "") -> ProjModel:
    """P^1_R x M with the product cover (2 times the charts of M)."""
    names = list(M.graded_names)
    U = [_fresh(names, "U"), None]
    U[1] = _fresh(names + [U[0]], "U")
    blocks = [U] + [list(b) for b in M.blocks]
    big = PolyRing(U + names + ["t"], M.k)
    gens = [g.to_ring(big) for g in M.ideal.gens]
    charts = []
    for a in range(2):
        for c in M.charts:
            charts.append((a,) + tuple(i + 2 for i in c))
    out = ProjModel(M.k, blocks, gens, name or ("P1x%s" % M.name), charts, check=False)
    out.product_of = M
    return out


# -- affine blowups -----------------------------------------------------------------


def blowup_chart(c: Chart, center: Sequence[MultiPoly]) -> List[Chart]:
    """Rees charts A[g_i/g_j] of Bl_(g) Spec A, one per nonzero center generator."""
    center = [g for g in center if g]
    if not center:
        raise PreconditionError("empty center")
    if any(g.is_constant() for g in center) or (c.ideal + center).is_unit():
        return [c]
    C = Ideal(c.ring, center)
    if C.saturate(c.t) != C and not (c.ideal + center).radical_membership(c.t):
        raise PreconditionError("center has t-torsion and is not admissible")
    out = []
    for j, gj in enumerate(center):
        names = []
        for i, gi in enumerate(center):
            if i == j:
                continue
            v = gi.variables()
            base = (v[0] + "'") if len(v) == 1 and len(gi.terms) == 1 else "w%d" % i
            while base in c.ring.names or base in names:
                base += "'"
            names.append(base)
        big = c.ring.extend(names)
        gens = [g.to_ring(big) for g in c.ideal.gens]
        it = iter(names)
        for i, gi in enumerate(center):
            if i == j:
                continue
            gens.append(gj.to_ring(big) * big.var(next(it)) - gi.to_ring(big))
        I = Ideal(big, gens).saturate(gj.to_ring(big))
        out.append(Chart(I, "%s[%s]" % (c.name or "A", ",".join(names)), c.asserted_domain))
    return out


def exceptional_principal(ch: Chart, center: Sequence[MultiPoly], j: int) -> bool:
    """Every center generator lies in (g_j) on the j-th Rees chart."""
    gj = center[j].to_ring(ch.ring)
    J = ch.ideal + [gj]
    return all(J.contains(g.to_ring(ch.ring)) for g in center)


# -- graded morphisms -----------------------------------------------------------------


class GradedMorphism:
    """f: source -> target given by f^*(T) for the graded variables T of the target.

    Each source chart c must land in a target chart tau(c) with
    f^*(m_tau) = kappa * M for a monomial M dividing m_c.
    """

    def __init__(self, source: ProjModel, target: ProjModel, images: Dict[str, MultiPoly], name: str = ""):
        self.source = source
        self.target = target
        self.name = name
        self.images = {}
        for n in target.graded_names:
            if n not in images:
                raise PreconditionError("morphism %s gives no image for %s" % (name, n))
            p = images[n]
            self.images[n] = p.to_ring(source.ring) if p.ring != source.ring else p
        self.images["t"] = source.t
        for n, p in self.images.items():
            if n != "t" and len({source.degree(e) for e in p.terms}) > 1:
                raise PreconditionError("image of %s is not homogeneous" % n)
        for g in target.ideal.gens:
            if not source.ideal.contains(self.pullback(g)):
                raise PreconditionError("morphism %s does not respect the ideals" % name)
        self.chart_map = []
        for c in range(len(source.charts)):
            mc = source.chart_exps((c,))
            found = None
            for tau in range(len(target.charts)):
                pb = self.pullback(target.monomial(target.chart_exps((tau,))))
                if len(pb.terms) != 1:
                    continue
                (M, kappa), = pb.terms.items()
                if all(a <= b for a, b in zip(M, mc)):
                    w = tuple(b - a for a, b in zip(M, mc))
                    found = (tau, kappa, w)
                    break
            if found is None:
                raise PreconditionError("chart %s of the source maps into no target chart" % source.chart_name(c))
            self.chart_map.append(found)

    def pullback(self, f: MultiPoly) -> MultiPoly:
        return f.substitute(self.images, self.source.ring)

    def compose(self, other: "GradedMorphism") -> "GradedMorphism":
        """self o other (other: X -> Y, self: Y -> Z)."""
        images = {n: other.pullback(p) for n, p in self.images.items() if n != "t"}
        return GradedMorphism(other.source, self.target, images,
                              "%s*%s" % (self.name or "f", other.name or "g"))


def identity_morphism(M: ProjModel) -> GradedMorphism:
    return GradedMorphism(M, M, {n: M.ring.var(n) for n in M.graded_names}, "id")


def projection_to(M: ProjModel, target: ProjModel) -> GradedMorphism:
    """Forgetful map from a blowup or product model back to its base."""
    return GradedMorphism(M, target, {n: M.ring.var(n) for n in target.graded_names}, "proj")
