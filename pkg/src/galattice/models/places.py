"""Search for K'-points with small value of a, K' = k((u)), u^e = t.

For a chart with at most two coordinates (besides t) whose ideal is zero or
principal, one coordinate is fixed to c*u^j and the equation is solved for
the other by Newton polygons with integral slopes.  Residual roots must lie
in k, so only points defined over k((t^(1/e))) are found.  Every returned
witness is re-checked by evaluating the equation with truncated series.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import ceil, gcd
from typing import Dict, List, Optional

from ..arith import upoly
from ..arith.field import BaseField
from ..arith.extension import AlgebraicElement, ExtensionField
from ..arith.newton import newton_polygon
from ..arith.poly import MultiPoly
from ..arith.series import TruncatedSeries
from .chart import Chart, PreconditionError


@dataclass
class PlaceWitness:
    e: int
    point: Dict[str, TruncatedSeries]
    value: Fraction
    precision: int
    notes: List[str] = field(default_factory=list)

    def as_dict(self):
        return {
            "ramification": self.e,
            "point": {k: _u_str(v, self.e) for k, v in sorted(self.point.items())},
            "value": str(self.value),
            "precision": self.precision,
            "field": _field_name(self.point),
        }


def _field_name(point) -> str:
    fields = [s.k for s in point.values()]
    ext = [F for F in fields if isinstance(F, ExtensionField)]
    return (ext or fields)[0].kind if fields else ""


def _u_str(s: TruncatedSeries, e: int) -> str:
    return TruncatedSeries(s.k, s.coeffs, s.shift, s.prec, e).to_str()


# -- roots in k -----------------------------------------------------------------

def _rational_roots(a):
    from fractions import Fraction as F
    from math import gcd, isqrt
    if not a:
        return []
    coeffs = [F(c) for c in a]
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    out = []
    if ints[0] == 0:
        out.append(F(0))
        while ints and ints[0] == 0:
            ints = ints[1:]
    if len(ints) <= 1:
        return out
    if len(ints) == 2:
        return sorted(out + [F(-ints[0], ints[1])])
    c0, cn = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
        return small + [n // d for d in reversed(small) if d * d != n]

    seen = set()
    for pn in divisors(c0):
        for qd in divisors(cn):
            for s in (1, -1):
                r = F(s * pn, qd)
                if r in seen:
                    continue
                seen.add(r)
                if upoly.evaluate(tuple(F(x) for x in ints), r) == 0:
                    out.append(r)
    return sorted(out)


def roots_in_k(a, k):
    """Distinct roots in k of a dense univariate polynomial.

    Over an infinite extension field only linear polynomials are solved.
    """
    a = upoly.norm(a)
    if len(a) <= 1:
        return []
    if len(a) == 2:
        return [-a[0] / a[1]]
    if k.is_finite:
        return [c for c in k.elements() if not upoly.evaluate(a, c)]
    if isinstance(k, BaseField):
        return _rational_roots(a)
    return []


def _irreducible_cofactor(res, roots, k: BaseField):
    """res with its roots in k removed, if what is left is irreducible of degree 2 or 3."""
    a = upoly.squarefree_part(upoly.shift(res, -upoly.order(res)), k.p)
    for z in roots:
        if z:
            a = upoly.exact_div(a, (-z, k.one))
    if upoly.deg(a) in (2, 3):
        return upoly.monic(a)
    return None


def field_of(coeffs, k):
    for c in coeffs:
        if isinstance(c, AlgebraicElement):
            return c.F
    return k


# -- Newton-Puiseux with a fixed uniformizer ------------------------------------

def _poly_subst_shift(F, lam: int, z0, k):
    """Coefficients (in y1) of F(u^lam (z0 + y1)); F is a list of u-polynomials."""
    n = len(F) - 1
    zero = k.zero
    out = [() for _ in range(n + 1)]
    # (z0 + y1)^i = sum_j binom(i, j) z0^(i-j) y1^j
    for i, b in enumerate(F):
        if not b:
            continue
        bi = upoly.shift(b, lam * i)
        binom = 1
        for j in range(i + 1):
            c = k(binom) * (z0 ** (i - j) if i - j else k.one)
            if c:
                out[j] = upoly.add(out[j], upoly.scale(bi, c))
            binom = binom * (i - j) // (j + 1)
    m = min((upoly.order(b) for b in out if b), default=0)
    out = [upoly.shift(b, -m) if b else b for b in out]
    while out and not out[-1]:
        out.pop()
    return out


class _Ord:
    """Adapter giving a u-polynomial a ``valuation`` for newton_polygon."""

    def __init__(self, a):
        self.a = a

    def valuation(self):
        return upoly.order(self.a) if self.a else float("inf")


def series_roots(F, k, prec: int, min_val: int = 0, extend: bool = False):
    """Roots y (mod u^prec) with v(y) >= min_val of sum_i F[i](u) y^i, F[i] in k[u].

    Each root is a dense coefficient list of length prec with entries in k, or,
    with ``extend``, in k' = k[a]/(m) where m is an irreducible residual
    polynomial of degree 2 or 3 (one extension per root).
    """
    F = list(F)
    while F and not F[-1]:
        F.pop()
    if len(F) <= 1:
        return []
    if prec <= min_val:
        return [[k.zero] * max(prec, 0)]
    out = []
    if not F[0]:
        out.append([k.zero] * prec)
        i = 0
        while not F[i]:
            i += 1
        F = F[i:]
        if len(F) <= 1:
            return out
    poly = newton_polygon([_Ord(b) for b in F])
    for (x1, y1), (x2, y2) in zip(poly.vertices, poly.vertices[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        lam = -slope
        if lam.denominator != 1 or lam < min_val:
            continue
        lam = int(lam)
        res = []
        for i in range(x1, x2 + 1):
            b = F[i]
            if b and upoly.order(b) == y1 + slope * (i - x1):
                res.append(b[upoly.order(b)])
            else:
                res.append(k.zero)
        res = upoly.norm(res)
        roots = [(k, F, z0) for z0 in roots_in_k(res, k)]
        if extend and isinstance(k, BaseField):
            m = _irreducible_cofactor(res, [z for _, _, z in roots], k)
            if m is not None:
                k2 = ExtensionField(k, m)
                roots.append((k2, [tuple(k2(c) for c in b) for b in F], k2.gen))
        for kk, FF, z0 in roots:
            if not z0:
                continue
            if lam >= prec:
                out.append([k.zero] * prec)
                continue
            G = _poly_subst_shift(FF, lam, z0, kk)
            for tail in series_roots(G, kk, prec - lam, 1):
                root = [kk.zero] * prec
                root[lam] = z0
                for j, c in enumerate(tail):
                    if lam + j < prec:
                        root[lam + j] = root[lam + j] + c
                if root not in out:
                    out.append(root)
    return out


# -- the search -------------------------------------------------------------------

def _series(k, coeffs, prec):
    return TruncatedSeries(field_of(coeffs, k), coeffs, 0, prec)


def _sparse_mul(a: dict, b: dict, prec: int) -> dict:
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            n = i + j
            if n < prec:
                out[n] = out[n] + x * y if n in out else x * y
    return {n: c for n, c in out.items() if c}


def _eval(f: MultiPoly, point: Dict[str, TruncatedSeries], e: int, prec: int) -> dict:
    """Sparse coefficients {n: c} of f(t = u^e, point) modulo u^prec."""
    k = field_of([s.k.gen for s in point.values() if isinstance(s.k, ExtensionField)], f.ring.dom)
    vals = {x: {s.shift + i: k(c) for i, c in enumerate(s.coeffs) if c and s.shift + i < prec}
            for x, s in point.items()}
    vals["t"] = {e: k.one} if e < prec else {}
    powers = {}

    def power(name, a):
        key = (name, a)
        if key not in powers:
            powers[key] = {0: k.one} if a == 0 else _sparse_mul(power(name, a - 1), vals[name], prec)
        return powers[key]

    acc = {}
    for ex, c in f.terms.items():
        term = {0: k(c)}
        for name, a in zip(f.ring.names, ex):
            if a:
                term = _sparse_mul(term, power(name, a), prec)
        for n, x in term.items():
            acc[n] = acc[n] + x if n in acc else x
    return {n: c for n, c in acc.items() if c}


def _univariate_in(f: MultiPoly, var: str, fixed: Dict[str, tuple], e: int):
    """Coefficients in ``var`` (as exact u-polynomials) of f with t = u^e and fixed values."""
    k = f.ring.dom
    i_var = f.ring.index(var)
    deg = f.degree_in(var)
    out = [() for _ in range(deg + 1)]
    one = (k.one,)
    tpoly = upoly.shift(one, e)
    for ex, c in f.terms.items():
        term = (c,)
        for name, a in zip(f.ring.names, ex):
            if not a or name == var:
                continue
            base = tpoly if name == "t" else fixed[name]
            term = upoly.mul(term, upoly.power(base, a, k.one))
        out[ex[i_var]] = upoly.add(out[ex[i_var]], term)
    return out


def _candidate_values(k: BaseField, e: int, bound: int):
    for j in range(0, e + 1):
        for c in k.small_elements(bound):
            if j > 0 and not c:
                continue
            yield j, c


def place_witness_search(a: MultiPoly, c: Chart, r=0, e_max: int = 6, t_power: int = 0,
                         bound: int = 4) -> Optional[PlaceWitness]:
    """A point P over k((t^(1/e))), e <= e_max, with v(a(P)) - t_power <= r, or None."""
    r = Fraction(r)
    k = c.k
    if a.ring != c.ring:
        raise PreconditionError("element and chart live in different rings")
    xs = c.xvars
    gens = c.ideal.groebner()
    if len(xs) > 2 or len(gens) > 1:
        raise PreconditionError("place search needs a curve or affine chart in at most two coordinates")
    if not xs:
        raise PreconditionError("chart has no coordinates")
    f = gens[0] if gens else None
    if f is not None and f.is_constant():
        raise PreconditionError("empty chart")
    for e in range(1, e_max + 1):
        prec = e * (t_power + max(ceil(r), 0) + 1) + 4
        for point in _points(f, xs, k, e, prec, bound):
            w = _check_point(a, f, point, e, prec, r, t_power)
            if w is not None:
                return w
    return None


def _points(f, xs, k, e, prec, bound):
    """Candidate integral points (as series dicts) at ramification e."""
    mono = lambda j, c: upoly.norm([k.zero] * j + [c])
    if f is None:
        for combo in product(list(_candidate_values(k, e, bound)), repeat=len(xs)):
            if e > 1 and gcd(e, *(j for j, _ in combo)) > 1:
                continue   # already tried at a smaller ramification
            yield {x: _series(k, mono(j, c), None) for x, (j, c) in zip(xs, combo)}
        return
    used = [x for x in xs if f.degree_in(x) > 0]
    if len(xs) == 1:
        (x,) = xs
        F = _univariate_in(f, x, {}, e)
        for root in series_roots(F, k, prec, extend=True):
            yield {x: _series(k, root, prec)}
        return
    for solve in xs:
        other = [x for x in xs if x != solve][0]
        for j, cval in _candidate_values(k, e, bound):
            fixed = {other: mono(j, cval)}
            F = _univariate_in(f, solve, fixed, e)
            if not any(F):
                for j2, c2 in _candidate_values(k, e, bound):
                    yield {other: _series(k, fixed[other], None), solve: _series(k, mono(j2, c2), None)}
                continue
            if solve not in used:
                continue
            for root in series_roots(F, k, prec, extend=True):
                yield {other: _series(k, fixed[other], None), solve: _series(k, root, prec)}


def _check_point(a, f, point, e, prec, r, t_power):
    if f is not None and _eval(f, point, e, prec):
        return None
    val = _eval(a, point, e, prec)
    if not val:
        # a vanishes to the working precision: value at least prec/e - t_power > r
        return None
    vu = min(val)
    value = Fraction(vu, e) - t_power
    if value <= r:
        return PlaceWitness(e, point, value, prec)
    return None
