"""Explicit contraction of the reduced Čech complex of P^n with O(c^q) coefficients.

A degree-p cochain is ``{simplex: {e: coefficient}}`` where a simplex is a sorted
(p+1)-tuple of chart indices, ``e`` is a degree-0 exponent vector of T_0..T_n and
the coefficient is a TruncatedSeries.  The monomial T^e lives on the chart
intersection of I exactly when every negative entry of e is indexed by I.

The complex splits along e.  The e = 0 part is the scalar subcomplex; each
e != 0 part is coned off by the smallest index j with e_j >= 0:
(h x)_I = sign * x_{I + j}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Dict, List, Optional, Tuple

from ..arith.field import BaseField
from ..arith.series import TruncatedSeries
from ..lattice.truncated import k_rank

Simplex = Tuple[int, ...]
Exps = Tuple[int, ...]
Cochain = Dict[Simplex, Dict[Exps, TruncatedSeries]]


class WindowError(ValueError):
    """The cochain leaves the monomial window, a chart, or the twist."""


def negative_support(e: Exps) -> frozenset:
    return frozenset(i for i, x in enumerate(e) if x < 0)


def cone_index(e: Exps) -> int:
    return min(i for i, x in enumerate(e) if x >= 0)


def _insert_sign(j: int, simplex: Simplex) -> Tuple[Simplex, int]:
    tau = tuple(sorted(simplex + (j,)))
    return tau, (-1 if tau.index(j) % 2 else 1)


def _add(out: Cochain, s: Simplex, e: Exps, c: TruncatedSeries):
    row = out.setdefault(s, {})
    y = row.get(e)
    y = c if y is None else y + c
    if y:
        row[e] = y
    else:
        row.pop(e, None)
        if not row:
            del out[s]


@dataclass
class PnCech:
    n: int
    k: BaseField
    window: int
    N: int
    q: Optional[Fraction] = None

    def monomials(self) -> List[Exps]:
        """Degree-0 exponent vectors with all |e_i| <= window."""
        rng = range(-self.window, self.window + 1)
        return [e for e in product(rng, repeat=self.n + 1) if sum(e) == 0]

    def simplices(self, p: int) -> List[Simplex]:
        return list(combinations(range(self.n + 1), p + 1))

    def validate(self, p: int, x: Cochain):
        for s, row in x.items():
            if len(s) != p + 1 or list(s) != sorted(set(s)) or s[-1] > self.n:
                raise WindowError("bad simplex %r for degree %d" % (s, p))
            for e, c in row.items():
                if len(e) != self.n + 1 or sum(e) != 0:
                    raise WindowError("exponent %r is not a degree-0 monomial" % (e,))
                if max(abs(a) for a in e) > self.window:
                    raise WindowError("exponent %r outside the window %d" % (e, self.window))
                if not negative_support(e) <= set(s):
                    raise WindowError("T^%r is not a section over the chart %r" % (e, s))
                if self.q is not None and c:
                    v = c.valuation()
                    if v is not None and v <= self.q:
                        raise WindowError("coefficient of valuation %s is not in O(c^%s)" % (v, self.q))

    def d(self, x: Cochain) -> Cochain:
        out: Cochain = {}
        for s, row in x.items():
            for j in range(self.n + 1):
                if j in s:
                    continue
                tau, sign = _insert_sign(j, s)
                for e, c in row.items():
                    _add(out, tau, e, c if sign > 0 else -c)
        return out

    @staticmethod
    def reduce(x: Cochain) -> Cochain:
        """Image in the reduced complex: drop the scalar (e = 0) components."""
        out: Cochain = {}
        for s, row in x.items():
            r = {e: c for e, c in row.items() if any(e)}
            if r:
                out[s] = r
        return out

    def h(self, x: Cochain) -> Cochain:
        out: Cochain = {}
        for s, row in x.items():
            for e, c in row.items():
                if not any(e):
                    continue
                j = cone_index(e)
                if j not in s or len(s) == 1:
                    continue
                rest = tuple(i for i in s if i != j)
                _, sign = _insert_sign(j, rest)
                _add(out, rest, e, c if sign > 0 else -c)
        return out

    @staticmethod
    def equal(a: Cochain, b: Cochain) -> bool:
        for s in set(a) | set(b):
            ra, rb = a.get(s, {}), b.get(s, {})
            for e in set(ra) | set(rb):
                x, y = ra.get(e), rb.get(e)
                if x is None:
                    if y:
                        return False
                elif y is None:
                    if x:
                        return False
                elif not x.agrees_with(y):
                    return False
        return True

    def homotopy_identity(self, p: int, x: Cochain) -> bool:
        """d h x + h d x == x in the reduced complex."""
        lhs: Cochain = {}
        for part in (self.d(self.h(x)), self.h(self.d(x))):
            for s, row in part.items():
                for e, c in row.items():
                    _add(lhs, s, e, c)
        return self.equal(self.reduce(lhs), self.reduce(x))

    # brute-force k-linear cohomology of the windowed complex ---------------------
    def _levels(self) -> List[int]:
        lo = 0 if self.q is None else int(self.q // 1) + 1
        return list(range(max(lo, 0), self.N))

    def basis(self, p: int, reduced: bool = False):
        out = []
        for s in self.simplices(p):
            for e in self.monomials():
                if reduced and not any(e):
                    continue
                if negative_support(e) <= set(s):
                    for nu in self._levels():
                        out.append((s, e, nu))
        return out

    def cohomology_dims(self, reduced: bool = False) -> Dict[int, int]:
        """dim_k H^p of the windowed complex C^p (x) (t^{>q} R / t^N), by rank."""
        one = self.k.one
        ranks = {}
        dims = {}
        for p in range(self.n + 1):
            dims[p] = len(self.basis(p, reduced))
            if p == self.n:
                ranks[p] = 0
                continue
            images = []
            for s, e, nu in self.basis(p, reduced):
                img = self.d({s: {e: TruncatedSeries(self.k, (one,), nu, self.N)}})
                images.append({(s2, e2, c.valuation()): c.leading() for s2, row in img.items() for e2, c in row.items()})
            ranks[p] = k_rank(images, self.k)
        return {p: dims[p] - ranks[p] - (ranks[p - 1] if p > 0 else 0) for p in dims}

    def h0_scalars(self) -> List[int]:
        """t-exponents spanning H^0 of the full windowed complex: the scalars of valuation > q."""
        return self._levels()

    def random_monomial_cochain(self, rng: random.Random, p: Optional[int] = None, terms: int = 1) -> Tuple[int, Cochain]:
        if p is None:
            p = rng.randint(0, self.n)
        monos = self.monomials()
        x: Cochain = {}
        for _ in range(terms):
            s = rng.choice(self.simplices(p))
            e = rng.choice([e for e in monos if negative_support(e) <= set(s)])
            lo = self._levels()[0] if self._levels() else 0
            v = rng.randint(lo, self.N - 1)
            coeffs = [self.k.random_element(rng) or self.k.one] + [self.k.random_element(rng) for _ in range(self.N - v - 1)]
            _add(x, s, e, TruncatedSeries(self.k, coeffs, v, self.N))
        return p, x


@dataclass
class HomotopyResult:
    n: int
    degree: int
    cochain: Cochain
    h: Cochain
    identity_holds: bool
    scalar_part: Cochain

    def as_dict(self):
        return {"n": self.n, "degree": self.degree, "cochain": cochain_str(self.cochain),
                "h": cochain_str(self.h), "identity_holds": self.identity_holds,
                "scalar_part": cochain_str(self.scalar_part)}


def cochain_str(x: Cochain) -> Dict[str, str]:
    out = {}
    for s in sorted(x):
        parts = []
        for e in sorted(x[s]):
            c = x[s][e]
            mono = "*".join(("T%d" % i) + ("" if a == 1 else "^%d" % a) for i, a in enumerate(e) if a)
            body = TruncatedSeries(c.k, c.coeffs, c.shift, None, c.e).to_str()
            if not mono:
                parts.append(body)
            elif body in ("1", "-1"):
                parts.append(body[:-1] + mono)
            else:
                parts.append("%s*%s" % ("(%s)" % body if " " in body else body, mono))
        out["C(%s)" % ",".join(map(str, s))] = " + ".join(parts).replace("+ -", "- ") if parts else "0"
    return out


def pn_cech_homotopy(n: int, x: Cochain, degree: int, k: Optional[BaseField] = None, window: int = 3,
                     N: int = 8, q=None) -> HomotopyResult:
    """Apply the contraction to a degree-``degree`` cochain and check dh + hd = Id on it."""
    k = k or BaseField(0)
    cx = PnCech(n, k, window, N, None if q is None else Fraction(q))
    cx.validate(degree, x)
    hx = cx.h(x)
    scalar = {s: {e: c for e, c in row.items() if not any(e)} for s, row in x.items()}
    scalar = {s: r for s, r in scalar.items() if r}
    return HomotopyResult(n, degree, x, hx, cx.homotopy_identity(degree, x), scalar)
