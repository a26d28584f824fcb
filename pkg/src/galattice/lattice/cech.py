"""Windowed Čech complexes of O and G_a(r) on multigraded models.

On the intersection D(m_sigma) of the charts in sigma, the window-D sections
are the classes g / m_sigma^D with g of multidegree D*deg(m_sigma).  Over K
these form the finite-dimensional space (K[T]/I_sigma)_d, coordinatized by
normal forms; the sheaf picks an R-lattice inside it:

* structure: spanned by all monomials of degree d,
* ga: spanned by (J : m_sigma^oo)_d with J = sqrt(I + t) the reduced fiber ideal,

each multiplied by t^r.  Restriction multiplies numerators by m_j^D, so the
window-D complex is a subcomplex of the window-D' complex for D <= D'.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from ..arith.scalar import Scalar
from ..ideals import GREVLEX, Ideal, MonomialOrder
from ..ideals.groebner import leading, normal_form
from .linalg import ComplexReducer, HomologyData, RLattice, Vec, axpy
from .model import ProjModel

Sigma = Tuple[int, ...]
KDict = Dict[tuple, Scalar]

SHEAVES = ("structure", "ga")


def to_kdict(f, model: ProjModel) -> KDict:
    """Polynomial of S = k[T, t] as a dict T-exponents -> Scalar in t."""
    k = model.k
    ng = model.ngraded
    acc: Dict[tuple, dict] = {}
    for e, c in f.terms.items():
        acc.setdefault(e[:ng], {})[e[ng]] = c
    out = {}
    for te, coeffs in acc.items():
        top = max(coeffs)
        arr = [k.zero] * (top + 1)
        for i, c in coeffs.items():
            arr[i] = c
        out[te] = Scalar.poly(k, arr)
    return out


def kdict_mul_monomial(f: KDict, e, c: Optional[Scalar] = None) -> KDict:
    if c is None:
        return {tuple(a + b for a, b in zip(x, e)): v for x, v in f.items()}
    return {tuple(a + b for a, b in zip(x, e)): v * c for x, v in f.items()}


def kdict_mul(f: KDict, g: KDict) -> KDict:
    out: KDict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            v = out.get(e)
            v = c1 * c2 if v is None else v + c1 * c2
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def kdict_str(f: KDict, names) -> str:
    if not f:
        return "0"
    parts = []
    for e in sorted(f, key=GREVLEX.key, reverse=True):
        c = f[e]
        mon = "*".join(n if a == 1 else "%s^%d" % (n, a) for n, a in zip(names, e) if a)
        cs = c.to_str()
        if not c.is_const() and (not c.is_poly() or sum(1 for x in c.num if x) > 1):
            cs = "(%s)" % cs
        if not mon:
            parts.append(cs)
        elif cs == "1":
            parts.append(mon)
        elif cs == "-1":
            parts.append("-" + mon)
        else:
            parts.append("%s*%s" % (cs, mon))
    s = " + ".join(parts)
    return s.replace("+ -", "- ")


def monomials_of_degree(model: ProjModel, d: Sequence[int]):
    """All graded exponent vectors of multidegree d."""
    blocks = []
    pos = 0
    for b in model.blocks:
        blocks.append(list(range(pos, pos + len(b))))
        pos += len(b)

    def comps(n, parts):
        if parts == 1:
            yield (n,)
            return
        for a in range(n, -1, -1):
            for rest in comps(n - a, parts - 1):
                yield (a,) + rest

    out = [()]
    for b, db in zip(blocks, d):
        out = [x + y for x in out for y in comps(db, len(b))]
    return out


class _KBasis:
    """Groebner basis over K of I_sigma (graded variables only)."""

    def __init__(self, model: ProjModel, sigma: Sigma):
        I = model.saturated_ideal(sigma)
        order = MonomialOrder.elimination(model.ngraded)
        self.gb = []
        for g in I.groebner(order):
            kd = to_kdict(g, model)
            lm = leading(kd, GREVLEX)
            inv = kd[lm].inverse()
            self.gb.append((lm, {e: c * inv for e, c in kd.items()}))

    def reduce(self, f: KDict) -> KDict:
        return normal_form(f, self.gb, GREVLEX) if self.gb else dict(f)


def _kbasis(model: ProjModel, sigma: Sigma) -> _KBasis:
    cache = model.__dict__.setdefault("_kbases", {})
    b = cache.get(sigma)
    if b is None:
        b = cache[sigma] = _KBasis(model, sigma)
    return b


def sheaf_generators(model: ProjModel, sheaf: str, sigma: Sigma):
    """Homogeneous generators of the sheaf ideal saturated at m_sigma."""
    if sheaf == "structure":
        return [model.ring.one()]
    if sheaf != "ga":
        raise ValueError("unknown sheaf %r" % sheaf)
    cache = model.__dict__.setdefault("_ga_sat", {})
    gens = cache.get(sigma)
    if gens is None:
        J = model.fiber_radical()
        m = model.monomial(model.chart_exps(sigma))
        Js = J.saturate(m) + model.saturated_ideal(sigma).gens
        gens = cache[sigma] = Js.groebner()
    return gens


class SectionSpace:
    """Window-D sections over D(m_sigma) as an R-lattice in (K[T]/I_sigma)_d."""

    def __init__(self, model: ProjModel, sigma: Sigma, D: int, sheaf: str, r: int):
        self.model = model
        self.sigma = sigma
        self.D = D
        k = model.k
        self.mexp = model.chart_exps(sigma)[:model.ngraded]
        self.degree = tuple(D * x for x in model.degree(model.chart_exps(sigma)))
        self.kb = _kbasis(model, sigma)
        shift = Scalar.t_power(k, r)
        vecs = []
        seen = set()
        for g in sheaf_generators(model, sheaf, sigma):
            gd = model.degree(next(iter(g.terms)))
            rest = tuple(a - b for a, b in zip(self.degree, gd))
            if any(x < 0 for x in rest):
                continue
            gk = to_kdict(g, model)
            for mon in monomials_of_degree(model, rest):
                v = self.kb.reduce(kdict_mul_monomial(gk, mon, shift))
                if not v:
                    continue
                key = tuple(sorted((e, c.num, c.den) for e, c in v.items()))
                if key in seen:
                    continue
                seen.add(key)
                vecs.append(v)
        key = GREVLEX.key
        self.lattice = RLattice(k, vecs, order=lambda e: tuple(-x for x in key(e)))

    @property
    def rank(self) -> int:
        return self.lattice.rank

    def basis_numerator(self, j: int) -> KDict:
        return self.lattice.basis[j]

    def coordinates(self, numerator: KDict, require_integral: bool = True):
        return self.lattice.coordinates(self.kb.reduce(numerator), require_integral)

    def sparse_coordinates(self, numerator: KDict, require_integral: bool = True) -> Vec:
        return self.lattice.sparse_coordinates(self.kb.reduce(numerator), require_integral)


def simplices(ncharts: int, p: int) -> List[Sigma]:
    return list(combinations(range(ncharts), p + 1))


class CechComplexR:
    """Alternating Čech complex over R in degrees ``lo..hi`` at window D."""

    def __init__(self, model: ProjModel, sheaf: str, r: int, D: int, lo: int, hi: int):
        n = len(model.charts)
        lo = max(lo, 0)
        hi = min(hi, n - 1)
        self.model, self.sheaf, self.r, self.D = model, sheaf, r, D
        self.lo, self.hi = lo, hi
        self.k = model.k
        self.spaces: Dict[Sigma, SectionSpace] = {}
        self.index: Dict[int, List[Tuple[Sigma, int]]] = {}
        self.offset: Dict[int, Dict[Sigma, int]] = {}
        for p in range(lo, hi + 1):
            ids = []
            offs = {}
            for s in simplices(n, p):
                sp = SectionSpace(model, s, D, sheaf, r)
                self.spaces[s] = sp
                offs[s] = len(ids)
                ids.extend((s, j) for j in range(sp.rank))
            self.index[p] = ids
            self.offset[p] = offs
        self.mats: Dict[int, Dict[int, Vec]] = {}
        for p in range(lo, hi):
            self.mats[p] = self._differential(p)
        self._reducer = None

    def dim(self, p: int) -> int:
        return len(self.index.get(p, ()))

    def _differential(self, p: int) -> Dict[int, Vec]:
        model, D = self.model, self.D
        n = len(model.charts)
        cols: Dict[int, Vec] = {}
        chart_mono = [tuple(D * x for x in model.chart_exps((c,))[:model.ngraded]) for c in range(n)]
        for gid, (s, j) in enumerate(self.index[p]):
            num = self.spaces[s].basis_numerator(j)
            col: Vec = {}
            for c in range(n):
                if c in s:
                    continue
                tau = tuple(sorted(s + (c,)))
                sign = -1 if tau.index(c) % 2 else 1
                sp = self.spaces[tau]
                coords = sp.sparse_coordinates(kdict_mul_monomial(num, chart_mono[c]))
                base = self.offset[p + 1][tau]
                for q, a in coords.items():
                    col[base + q] = a if sign > 0 else -a
            cols[gid] = col
        return cols

    # cochains as numerators ---------------------------------------------------------
    def cochain(self, p: int, vec) -> Dict[Sigma, KDict]:
        """Numerators per simplex of a coordinate vector (dict or dense list)."""
        items = vec.items() if isinstance(vec, dict) else enumerate(vec)
        out: Dict[Sigma, KDict] = {}
        for gid, a in items:
            if not a:
                continue
            s, j = self.index[p][gid]
            acc = out.setdefault(s, {})
            axpy(acc, a, self.spaces[s].basis_numerator(j))
        return {s: v for s, v in out.items() if v}

    def coordinates(self, p: int, cochain: Dict[Sigma, KDict], require_integral: bool = False) -> Vec:
        out: Vec = {}
        for s, num in cochain.items():
            if not num:
                continue
            coords = self.spaces[s].sparse_coordinates(num, require_integral)
            base = self.offset[p][s]
            for q, a in coords.items():
                out[base + q] = a
        return out

    def d_squared_zero(self) -> bool:
        for p in range(self.lo, self.hi - 1):
            for col in self.mats[p].values():
                img: Vec = {}
                for i, a in col.items():
                    axpy(img, a, self.mats[p + 1].get(i, {}))
                if img:
                    return False
        return True

    # cohomology ---------------------------------------------------------------------
    def reducer(self) -> ComplexReducer:
        if self._reducer is None:
            dims = {p: self.dim(p) for p in range(self.lo, self.hi + 1)}
            self._reducer = ComplexReducer(dims, self.mats, self.k).reduce()
        return self._reducer

    def homology(self, i: int) -> "CechHomology":
        return CechHomology(self, i)


class CechHomology:
    """H^i of a CechComplexR with free representatives and H tensor K coordinates."""

    def __init__(self, cx: CechComplexR, i: int):
        if not cx.lo <= i <= cx.hi:
            raise ValueError("degree %d outside the built range" % i)
        self.cx = cx
        self.i = i
        red = cx.reducer()
        k = cx.k
        A = red.minimal(i - 1)[2] if i - 1 >= cx.lo else []
        src, _, B = red.minimal(i) if i + 1 <= cx.hi else (sorted(red.alive[i]), [], [])
        self.alive = src
        n = len(src)
        self.data = HomologyData(k, n, A, B)
        self.rank = self.data.rank
        self.torsion = self.data.torsion
        self.representatives: List[Vec] = []
        for x in self.data.free_basis:
            y = {src[q]: a for q, a in enumerate(x) if a}
            self.representatives.append(red.backward(i, y))

    def cochains(self):
        return [self.cx.cochain(self.i, v) for v in self.representatives]

    def coordinates_of_vector(self, x: Vec) -> List[Scalar]:
        red = self.cx.reducer()
        y = red.forward(self.i, x)
        zero = Scalar.const(self.cx.k, 0)
        dense = [y.get(a, zero) for a in self.alive]
        return self.data.coordinates(dense)

    def coordinates_of_cochain(self, cochain: Dict[Sigma, KDict]) -> List[Scalar]:
        return self.coordinates_of_vector(self.cx.coordinates(self.i, cochain))


def window_inclusion(cochain: Dict[Sigma, KDict], model: ProjModel, D_from: int, D_to: int):
    """Rewrite g / m^D_from as (g m^(D_to - D_from)) / m^D_to."""
    if D_to == D_from:
        return dict(cochain)
    out = {}
    for s, num in cochain.items():
        e = tuple((D_to - D_from) * x for x in model.chart_exps(s)[:model.ngraded])
        out[s] = kdict_mul_monomial(num, e)
    return out


def pullback_cochain(f, cochain: Dict[Sigma, KDict], p: int, D: int) -> Dict[Sigma, KDict]:
    """Pull an alternating p-cochain of the target back along a GradedMorphism."""
    src, tgt = f.source, f.target
    k = src.k
    n = len(src.charts)
    imgs = [to_kdict(f.images[v], src) for v in tgt.graded_names]
    cache = {}

    def image_mono(e):
        out = cache.get(e)
        if out is None:
            out = {(0,) * src.ngraded: Scalar.const(k, 1)}
            for v, a in enumerate(e):
                for _ in range(a):
                    out = kdict_mul(out, imgs[v])
            cache[e] = out
        return out

    res = {}
    for s in simplices(n, p):
        taus = [f.chart_map[c][0] for c in s]
        if len(set(taus)) < len(taus):
            continue
        order = sorted(range(len(taus)), key=lambda q: taus[q])
        tau = tuple(taus[q] for q in order)
        num = cochain.get(tau)
        if not num:
            continue
        # sign of the sorting permutation
        sign = 1
        perm = list(order)
        for a in range(len(perm)):
            while perm[a] != a:
                b = perm[a]
                perm[a], perm[b] = perm[b], perm[a]
                sign = -sign
        acc: KDict = {}
        for e, c in num.items():
            axpy(acc, c, image_mono(e))
        w = [0] * src.ngraded
        kappa = Scalar.const(k, sign)
        for c in s:
            _, kap, we = f.chart_map[c]
            for q in range(src.ngraded):
                w[q] += D * we[q]
            kappa = kappa / Scalar.const(k, kap) ** D
        res[s] = kdict_mul_monomial(acc, tuple(w), kappa)
    return res
