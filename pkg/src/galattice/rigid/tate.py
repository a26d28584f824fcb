"""Laurent chunks with truncated t-adic coefficients and their sup valuations.

Valuations are additive (v(t) = 1); a radius c^q corresponds to v(z) = q, so the
disc |z| <= c^q is {v(z) >= q}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from ..arith.field import BaseField
from ..arith.scalar import INF, Scalar
from ..arith.series import TruncatedSeries

Exps = Tuple[int, ...]


class DomainError(ValueError):
    """A chunk's exponents do not fit the domain it is evaluated on."""


@dataclass(frozen=True)
class Disc:
    """{v(z) >= q}; q = 0 is the closed unit disc."""
    q: Fraction = Fraction(0)

    def contribution(self, e: int):
        if e < 0:
            raise DomainError("negative exponent %d on a disc factor" % e)
        return e * self.q

    def __str__(self):
        return "disc(%s)" % self.q


@dataclass(frozen=True)
class Annulus:
    """{q1 <= v(z) <= q2}: outer radius c^q1, inner radius c^q2."""
    q1: Fraction
    q2: Fraction

    def __post_init__(self):
        if not (0 <= self.q1 <= self.q2):
            raise ValueError("annulus needs 0 <= q1 <= q2, got (%s, %s)" % (self.q1, self.q2))

    def contribution(self, e: int):
        return min(e * self.q1, e * self.q2)

    def __str__(self):
        return "annulus(%s, %s)" % (self.q1, self.q2)


def disc(q=0) -> Disc:
    return Disc(Fraction(q))


def annulus(q1, q2) -> Annulus:
    return Annulus(Fraction(q1), Fraction(q2))


def circle(q) -> Annulus:
    return Annulus(Fraction(q), Fraction(q))


class PolydiscDomain:
    """Product of discs and annuli centred at 0, one factor per variable."""

    def __init__(self, factors: Sequence[Union[Disc, Annulus]]):
        self.factors = tuple(factors)

    @classmethod
    def unit(cls, d: int) -> "PolydiscDomain":
        return cls([disc(0)] * d)

    @property
    def dim(self) -> int:
        return len(self.factors)

    def is_polydisc(self) -> bool:
        return all(isinstance(f, Disc) for f in self.factors)

    def allows(self, exps: Exps) -> bool:
        return all(e >= 0 or isinstance(f, Annulus) for f, e in zip(self.factors, exps))

    def monomial_valuation(self, exps: Exps):
        if len(exps) != len(self.factors):
            raise DomainError("chunk has %d variables, domain %d" % (len(exps), len(self.factors)))
        return sum((f.contribution(e) for f, e in zip(self.factors, exps)), Fraction(0))

    def __repr__(self):
        return " x ".join(str(f) for f in self.factors)


def _coerce(k: BaseField, c, prec) -> TruncatedSeries:
    if isinstance(c, TruncatedSeries):
        return c if prec is None else c.truncate(prec)
    if isinstance(c, Scalar):
        if prec is None:
            if not c.is_poly():
                raise ValueError("exact chunks need polynomial coefficients in t")
            return TruncatedSeries(k, c.num, 0, None)
        return TruncatedSeries.from_scalar(c, prec)
    return TruncatedSeries.const(k, c, prec)


class TateChunk:
    """Finite Laurent polynomial sum a_e z^e with TruncatedSeries coefficients.

    All coefficients share the precision ``prec`` (None for exact data).  Terms
    whose coefficient vanishes to that precision are dropped.
    """

    def __init__(self, k: BaseField, nvars: int, terms: Dict[Exps, object] = None,
                 prec: Optional[int] = None, names: Optional[Sequence[str]] = None):
        self.k = k
        self.nvars = nvars
        self.prec = prec
        self.names = tuple(names) if names else (("z",) if nvars == 1 else tuple("z%d" % (i + 1) for i in range(nvars)))
        self.terms: Dict[Exps, TruncatedSeries] = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise ValueError("exponent %r has the wrong length" % (e,))
            s = _coerce(k, c, prec)
            if s:
                self.terms[e] = s

    # constructors -------------------------------------------------------------
    @classmethod
    def zero(cls, k, nvars=1, prec=None):
        return cls(k, nvars, {}, prec)

    @classmethod
    def monomial(cls, k, exps: Exps, coeff=1, prec=None):
        return cls(k, len(exps), {tuple(exps): coeff}, prec)

    @classmethod
    def from_laurent(cls, k, coeffs: Dict[int, object], prec=None):
        """Univariate chunk from {exponent: coefficient}."""
        return cls(k, 1, {(j,): c for j, c in coeffs.items()}, prec)

    def _like(self, terms):
        out = TateChunk(self.k, self.nvars, {}, self.prec, self.names)
        out.terms = {e: c for e, c in terms.items() if c}
        return out

    # arithmetic ----------------------------------------------------------------
    def __add__(self, other: "TateChunk") -> "TateChunk":
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms[e] + c if e in terms else c
        return self._like(terms)

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "TateChunk") -> "TateChunk":
        terms: Dict[Exps, TruncatedSeries] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                terms[e] = terms[e] + c if e in terms else c
        out = self._like(terms)
        if self.prec is not None or other.prec is not None:
            out.prec = min(p for p in (self.prec, other.prec) if p is not None)
        return out

    def times_t(self, n: int) -> "TateChunk":
        """Multiply by t^n; the absolute precision moves with the shift."""
        out = self._like({e: c.shift_by(n) for e, c in self.terms.items()})
        if self.prec is not None:
            out.prec = self.prec + n
        return out

    def split(self, var: int = 0) -> Tuple["TateChunk", "TateChunk"]:
        """(part with exponent >= 0 in ``var``, part with exponent < 0)."""
        plus = {e: c for e, c in self.terms.items() if e[var] >= 0}
        minus = {e: c for e, c in self.terms.items() if e[var] < 0}
        return self._like(plus), self._like(minus)

    def equals(self, other: "TateChunk") -> bool:
        """Coefficient-wise equality up to the shared precision."""
        for e in set(self.terms) | set(other.terms):
            a = self.terms.get(e)
            b = other.terms.get(e)
            if a is None:
                a = TruncatedSeries.zero(self.k, self.prec)
            if b is None:
                b = TruncatedSeries.zero(self.k, other.prec)
            if not a.agrees_with(b):
                return False
        return True

    def substitute_center(self, var: int, a) -> "TateChunk":
        """z_var -> z_var + a on a disc factor (a a scalar of non-negative valuation)."""
        if any(e[var] < 0 for e in self.terms):
            raise DomainError("centre substitution needs a disc factor")
        a = _coerce(self.k, a, self.prec)
        if a and a.valuation() < 0:
            raise DomainError("the new centre must lie in the unit disc")
        terms: Dict[Exps, TruncatedSeries] = {}
        for e, c in self.terms.items():
            n = e[var]
            power = TruncatedSeries.const(self.k, 1, self.prec)
            pw = [power]
            for _ in range(n):
                pw.append(pw[-1] * a)
            for j in range(n + 1):
                e2 = e[:var] + (j,) + e[var + 1:]
                term = c * pw[n - j] * comb(n, j)
                terms[e2] = terms[e2] + term if e2 in terms else term
        return self._like(terms)

    @property
    def exponents(self) -> List[Exps]:
        return sorted(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def to_str(self) -> str:
        if not self.terms:
            return "0" if self.prec is None else "O(t^%d)" % self.prec
        parts = []
        for e in sorted(self.terms, key=lambda x: tuple(-y for y in x)):
            c = self.terms[e]
            mono = "*".join(n if x == 1 else "%s^%d" % (n, x) for n, x in zip(self.names, e) if x)
            cs = c.truncate(c.prec) if c.prec is not None else c
            body = _series_body(cs)
            if not mono:
                parts.append(body)
            elif body in ("1", "-1"):
                parts.append(body[:-1] + mono)
            else:
                parts.append("(%s)*%s" % (body, mono) if " " in body else "%s*%s" % (body, mono))
        s = " + ".join(parts).replace("+ -", "- ")
        if self.prec is not None:
            s += " + O(t^%d)" % self.prec
        return s

    __str__ = to_str

    def __repr__(self):
        return "TateChunk(%s)" % self.to_str()


def _series_body(c: TruncatedSeries) -> str:
    exact = TruncatedSeries(c.k, c.coeffs, c.shift, None, c.e)
    return exact.to_str()


def _term_valuation(c: TruncatedSeries):
    v = c.valuation()
    return Fraction(c.prec, c.e) if v is None else v


def gauss_valuation(f: TateChunk):
    """Minimal coefficient valuation: the sup valuation on the closed unit polydisc."""
    if any(x < 0 for e in f.terms for x in e):
        raise DomainError("negative exponents do not live on the unit polydisc")
    return min((_term_valuation(c) for c in f.terms.values()), default=INF)


def sup_valuation(f: TateChunk, dom: PolydiscDomain):
    """min over terms of v(a_e) + sum_i (per-factor valuation of z_i^{e_i})."""
    if dom.dim != f.nvars:
        raise DomainError("chunk has %d variables, domain %d" % (f.nvars, dom.dim))
    return min((_term_valuation(c) + dom.monomial_valuation(e) for e, c in f.terms.items()), default=INF)


def vq_membership(f: TateChunk, dom: PolydiscDomain, q) -> bool:
    """f in O(c^q)(dom): sup valuation strictly above q."""
    return sup_valuation(f, dom) > Fraction(q)


@dataclass
class CousinSplit:
    f: TateChunk
    f_plus: TateChunk
    f_minus: TateChunk
    q: Fraction
    circle_valuation: object
    plus_valuation: object
    minus_valuation: object

    @property
    def readds(self) -> bool:
        return (self.f_plus + self.f_minus).equals(self.f)

    @property
    def bounds_hold(self) -> bool:
        return self.plus_valuation >= self.circle_valuation and self.minus_valuation >= self.circle_valuation

    def as_dict(self):
        return {"f": str(self.f), "f_plus": str(self.f_plus), "f_minus": str(self.f_minus),
                "q": str(self.q), "circle_valuation": _vstr(self.circle_valuation),
                "plus_valuation": _vstr(self.plus_valuation), "minus_valuation": _vstr(self.minus_valuation),
                "readds": self.readds, "bounds_hold": self.bounds_hold}


def _vstr(v):
    return "inf" if v == INF else str(v)


def cousin_solve(f: TateChunk, q=0) -> CousinSplit:
    """Split a Laurent chunk on the circle v(z) = q into a part extending to the
    disc v(z) >= q and a part extending to the annulus 0 <= v(z) <= q."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("the circle parameter must be >= 0")
    if f.nvars != 1:
        raise DomainError("cousin_solve works in one variable")
    plus, minus = f.split(0)
    return CousinSplit(
        f, plus, minus, q,
        sup_valuation(f, PolydiscDomain([circle(q)])),
        sup_valuation(plus, PolydiscDomain([disc(q)])),
        sup_valuation(minus, PolydiscDomain([annulus(0, q)])),
    )


def random_chunk(k: BaseField, rng: random.Random, prec: int, exps: Iterable[int] = range(-3, 4),
                 density: float = 0.6, min_valuation: int = 0) -> TateChunk:
    """Random univariate Laurent chunk with coefficients known modulo t^prec."""
    terms = {}
    for j in exps:
        if rng.random() > density:
            continue
        v = rng.randint(min_valuation, max(min_valuation, prec - 1))
        coeffs = [k.random_element(rng) for _ in range(prec - v)]
        terms[(j,)] = TruncatedSeries(k, coeffs, v, prec)
    return TateChunk(k, 1, terms, prec)


def random_disc_chunk(k: BaseField, rng: random.Random, nvars: int, prec: int, max_deg: int = 3,
                      terms: int = 4) -> TateChunk:
    """Random chunk on the unit polydisc."""
    out = {}
    for _ in range(terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
        v = rng.randint(0, prec - 1)
        out[e] = TruncatedSeries(k, [k.random_element(rng) for _ in range(prec - v)], v, prec)
    return TateChunk(k, nvars, out, prec)
