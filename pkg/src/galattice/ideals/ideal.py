"""Ideals of k[vars] with cached reduced Groebner bases.

t is an ordinary variable here; the coefficient domain is the base field k
(a ``FunctionField`` domain works too, for computations over K).
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from ..arith import upoly
from ..arith.field import BaseField
from ..arith.poly import MultiPoly, PolyRing
from .groebner import buchberger, leading, normal_form
from .order import GREVLEX, MonomialOrder


class RadicalRefusal(ArithmeticError):
    """The radical computation left its characteristic validity window."""


def _lead_pairs(gb, order):
    return [(leading(g, order), g) for g in gb]


class Ideal:
    __slots__ = ("ring", "gens", "_gb")

    def __init__(self, ring: PolyRing, gens: Iterable[MultiPoly] = ()):
        gens = list(gens)
        for g in gens:
            if g.ring != ring:
                raise ValueError("generator %s lives in %r, not %r" % (g, g.ring, ring))
        self.ring = ring
        self.gens = [g for g in gens if g]
        self._gb = {}

    # construction ------------------------------------------------------------
    @classmethod
    def unit(cls, ring):
        return cls(ring, [ring.one()])

    def __add__(self, other):
        if isinstance(other, Ideal):
            return Ideal(self.ring, self.gens + other.gens)
        return Ideal(self.ring, self.gens + list(other))

    def __mul__(self, other: "Ideal"):
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __repr__(self):
        return "Ideal(%s)" % ", ".join(g.to_str() for g in self.gens)

    # Groebner bases ------------------------------------------------------------
    def groebner(self, order: MonomialOrder = GREVLEX):
        """Reduced Groebner basis as a list of monic MultiPoly (leading term first)."""
        gb = self._gb.get(order)
        if gb is None:
            gb = buchberger([g.terms for g in self.gens], order)
            self._gb[order] = gb
        return [MultiPoly(self.ring, dict(g)) for g in gb]

    def _raw_gb(self, order=GREVLEX):
        if order not in self._gb:
            self.groebner(order)
        return self._gb[order]

    def reduce(self, f: MultiPoly, order: MonomialOrder = GREVLEX) -> MultiPoly:
        if f.ring != self.ring:
            raise ValueError("ring mismatch: %r vs %r" % (f.ring, self.ring))
        gb = self._raw_gb(order)
        return MultiPoly(self.ring, normal_form(f.terms, _lead_pairs(gb, order), order))

    def contains(self, f: MultiPoly) -> bool:
        return not self.reduce(f)

    __contains__ = contains

    def is_unit(self) -> bool:
        gb = self._raw_gb()
        return len(gb) == 1 and all(not any(e) for e in gb[0])

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return self._raw_gb() == other._raw_gb()

    def __hash__(self):
        return hash((self.ring, tuple(tuple(sorted(g.items())) for g in self._raw_gb())))

    def leading_monomials(self, order=GREVLEX):
        return [leading(g, order) for g in self._raw_gb(order)]

    # elimination and friends ---------------------------------------------------
    def eliminate(self, drop: Sequence[str]) -> "Ideal":
        """I intersected with k[remaining variables] (same ambient ring)."""
        drop = [n for n in drop if n in self.ring]
        if not drop:
            return Ideal(self.ring, self.gens)
        keep = [n for n in self.ring.names if n not in drop]
        big = PolyRing(list(drop) + keep, self.ring.dom)
        order = MonomialOrder.elimination(len(drop))
        J = Ideal(big, [g.to_ring(big) for g in self.gens])
        out = []
        nd = len(drop)
        for g in J.groebner(order):
            if all(not any(e[:nd]) for e in g.terms):
                out.append(g.to_ring(self.ring))
        return Ideal(self.ring, out)

    def _with_fresh(self, base="_w"):
        name = self.ring.fresh_name(base)
        big = self.ring.extend([name], front=True)
        return name, big, [g.to_ring(big) for g in self.gens]

    def saturate(self, f: MultiPoly) -> "Ideal":
        """I : f^infinity via 1 - w f."""
        if not f:
            raise ValueError("saturation by the zero polynomial")
        if f.is_constant():
            return Ideal(self.ring, self.gens)
        w, big, gens = self._with_fresh()
        gens.append(big.one() - big.var(w) * f.to_ring(big))
        return Ideal(big, gens).eliminate([w])._back(self.ring)

    def _back(self, ring):
        return Ideal(ring, [g.to_ring(ring) for g in self.gens])

    def saturate_ideal(self, J: "Ideal") -> "Ideal":
        """I : J^infinity as the intersection of I : g^infinity over generators g of J."""
        out = None
        for g in J.gens:
            s = self.saturate(g)
            out = s if out is None else out.intersect(s)
        return out if out is not None else Ideal(self.ring, self.gens)

    def intersect(self, other: "Ideal") -> "Ideal":
        if self.is_zero() or other.is_zero():
            return Ideal(self.ring, [])
        y, big, gens = self._with_fresh("_y")
        Y = big.var(y)
        gens = [Y * g for g in gens] + [(big.one() - Y) * g.to_ring(big) for g in other.gens]
        return Ideal(big, gens).eliminate([y])._back(self.ring)

    def quotient(self, other) -> "Ideal":
        """I : J (J an Ideal or a single polynomial)."""
        if isinstance(other, MultiPoly):
            return self._quotient_poly(other)
        out = None
        for g in other.gens:
            q = self._quotient_poly(g)
            out = q if out is None else out.intersect(q)
        return out if out is not None else Ideal.unit(self.ring)

    def _quotient_poly(self, g: MultiPoly) -> "Ideal":
        if not g:
            return Ideal.unit(self.ring)
        inter = self.intersect(Ideal(self.ring, [g]))
        return Ideal(self.ring, [exact_div(h, g) for h in inter.gens])

    def radical_membership(self, f: MultiPoly) -> bool:
        """f in sqrt(I), decided by 1 in I + (1 - w f)."""
        if not f:
            return True
        w, big, gens = self._with_fresh()
        gens.append(big.one() - big.var(w) * f.to_ring(big))
        return Ideal(big, gens).is_unit()

    # dimension -----------------------------------------------------------------
    def independent_set(self):
        """A maximal-size set of variables independent modulo I (from grevlex leads)."""
        if self.is_unit():
            return None
        leads = self.leading_monomials()
        n = self.ring.nvars
        for size in range(n, -1, -1):
            for subset in combinations(range(n), size):
                s = set(subset)
                if all(any(e[i] for i in range(n) if i not in s) for e in leads):
                    return [self.ring.names[i] for i in subset]
        return []

    def dimension(self) -> int:
        u = self.independent_set()
        return -1 if u is None else len(u)

    # radicals ------------------------------------------------------------------
    def radical(self, verify: bool = True) -> "Ideal":
        """sqrt(I): squarefree-part shortcut for principal ideals, otherwise
        reduction to dimension zero over k(U) with contraction and recursion."""
        out = _radical(self, 0)
        out = Ideal(self.ring, out.groebner())
        if verify:
            for g in out.gens:
                if not self.radical_membership(g):
                    raise ArithmeticError("radical output %s failed membership validation" % g)
        return out


# --------------------------------------------------------------------------------
# polynomial helpers built on the engine


def exact_div(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f / g, which must be exact (multivariate division by lex normal form)."""
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    order = MonomialOrder.lex()
    lg = leading(g.terms, order)
    cg = g.terms[lg]
    f = dict(f.terms)
    q = {}
    while f:
        m = leading(f, order)
        if not all(a >= b for a, b in zip(m, lg)):
            raise ArithmeticError("inexact polynomial division")
        c = f[m] / cg
        d = tuple(a - b for a, b in zip(m, lg))
        q[d] = c
        for e, v in g.terms.items():
            e2 = tuple(a + b for a, b in zip(e, d))
            nv = f.get(e2, None)
            nv = -c * v if nv is None else nv - c * v
            if nv:
                f[e2] = nv
            else:
                f.pop(e2, None)
    return MultiPoly(g.ring, q)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        exact_div(f, g)
        return True
    except ArithmeticError:
        return False


def poly_lcm(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    I = Ideal(f.ring, [f]).intersect(Ideal(f.ring, [g]))
    gb = I.groebner()
    if len(gb) != 1:
        raise ArithmeticError("intersection of principal ideals is not principal")
    return gb[0]


def poly_gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Monic (w.r.t. grevlex) gcd of two polynomials."""
    if not f:
        return g.monic(GREVLEX.key) if g else g
    if not g:
        return f.monic(GREVLEX.key)
    if f.is_constant() or g.is_constant():
        return f.ring.one()
    if f == g:
        return f.monic(GREVLEX.key)
    if len(f.variables()) == 1 and f.variables() == g.variables():
        return _univariate_gcd(f, g)
    return exact_div(f * g, poly_lcm(f, g)).monic(GREVLEX.key)


def _to_upoly(f: MultiPoly, name: str):
    i = f.ring.index(name)
    d = f.degree_in(name)
    zero = f.ring.dom.zero
    out = [zero] * (d + 1)
    for e, c in f.terms.items():
        out[e[i]] = c
    return upoly.norm(out)


def _from_upoly(a, ring: PolyRing, name: str) -> MultiPoly:
    i = ring.index(name)
    terms = {}
    for j, c in enumerate(a):
        if c:
            e = [0] * ring.nvars
            e[i] = j
            terms[tuple(e)] = c
    return MultiPoly(ring, terms)


def _univariate_gcd(f, g):
    x = f.variables()[0]
    return _from_upoly(upoly.gcd(_to_upoly(f, x), _to_upoly(g, x)), f.ring, x)


def squarefree_part(f: MultiPoly) -> MultiPoly:
    """f / gcd(f, all partials); a univariate f over F_p gets the exact treatment."""
    if f.is_constant():
        return f.ring.one() if f else f
    ring = f.ring
    low = [min(e[i] for e in f.terms) for i in range(ring.nvars)]
    if any(low):
        mono = ring.monomial([1 if a else 0 for a in low])
        rest = MultiPoly(ring, {tuple(a - b for a, b in zip(e, low)): c for e, c in f.terms.items()})
        return (mono * squarefree_part(rest)).monic(GREVLEX.key)
    p = ring.dom.characteristic
    vs = f.variables()
    if p and isinstance(ring.dom, BaseField) and all(not f.derivative(v) for v in vs):
        # f is a p-th power over F_p, where every coefficient is its own p-th root
        return squarefree_part(MultiPoly(ring, {tuple(a // p for a in e): c for e, c in f.terms.items()}))
    if len(vs) == 1:
        a = upoly.squarefree_part(_to_upoly(f, vs[0]), p)
        return _from_upoly(a, f.ring, vs[0])
    g = f
    for v in vs:
        g = poly_gcd(g, f.derivative(v))
        if g.is_constant():
            return f.monic(GREVLEX.key)
    return exact_div(f, g).monic(GREVLEX.key)


def is_squarefree(f: MultiPoly) -> bool:
    """True iff no square of a nonconstant polynomial divides f (any characteristic)."""
    if f.is_constant():
        return True
    g = f
    for v in f.variables():
        g = poly_gcd(g, f.derivative(v))
        if g.is_constant():
            return True
    return False


def _radical(I: Ideal, depth: int) -> Ideal:
    ring = I.ring
    if depth > 32:
        raise ArithmeticError("radical recursion did not terminate")
    if I.is_zero() or I.is_unit():
        return Ideal(ring, I.groebner())
    gb = I.groebner()
    if len(gb) == 1:
        g = squarefree_part(gb[0])
        if is_squarefree(g) and I.radical_membership(g):
            return Ideal(ring, [g])
        raise RadicalRefusal(
            "principal ideal (%s): squarefree part could not be certified in characteristic %d"
            % (gb[0], ring.dom.characteristic))
    p = ring.dom.characteristic
    U = I.independent_set()
    X = [n for n in ring.names if n not in U]
    extra = []
    for x in X:
        e = _eliminant(I, x, U)
        if not U:
            extra.append(squarefree_part(e))
            continue
        dx = e.degree_in(x)
        if p and dx >= p:
            raise RadicalRefusal(
                "characteristic %d does not exceed the eliminant degree %d in %s" % (p, dx, x))
        de = e.derivative(x)
        extra.append(exact_div(e, poly_gcd(e, de)))
    J = I + extra
    if not U:
        return Ideal(ring, J.groebner())
    # J k(U)[X] is the radical of I k(U)[X]; contract it, then recurse on the
    # locus where the leading coefficients of I vanish
    hJ = _lc_product(J, X, U)
    contracted = J.saturate(hJ) if not hJ.is_constant() else J
    hI = _lc_product(I, X, U)
    if hI.is_constant():
        return Ideal(ring, contracted.groebner())
    rest = _radical(I + [hI], depth + 1)
    return contracted.intersect(rest)


def _lc_product(I: Ideal, X, U) -> MultiPoly:
    """Product of the distinct k[U]-leading coefficients of a block (X >> U) Groebner basis."""
    ring = I.ring
    order = MonomialOrder.elimination(len(X))
    big = PolyRing(list(X) + list(U), ring.dom)
    Ib = Ideal(big, [g.to_ring(big) for g in I.gens])
    nx = len(X)
    lcs = []
    for g in Ib.groebner(order):
        lm = leading(g.terms, order)
        lc = MultiPoly(big, {(0,) * nx + e[nx:]: c for e, c in g.terms.items() if e[:nx] == lm[:nx]})
        if not lc.is_constant():
            lc = lc.monic(GREVLEX.key)
            if lc not in lcs:
                lcs.append(lc)
    h = big.one()
    for lc in lcs:
        h = h * lc
    return h.to_ring(ring)


def _eliminant(I: Ideal, x: str, U) -> MultiPoly:
    """Generator over k(U) of I k(U)[x] intersected: lowest positive x-degree element of I in k[U, x]."""
    ring = I.ring
    keep = list(U) + [x]
    drop = [n for n in ring.names if n not in keep]
    elim = I.eliminate(drop).gens
    cands = [g for g in elim if g.degree_in(x) > 0]
    if not cands:
        raise ArithmeticError("no eliminant in %s: %s is not algebraic over the independent set" % (x, x))
    return min(cands, key=lambda g: (g.degree_in(x), len(g.terms), g.to_str()))
