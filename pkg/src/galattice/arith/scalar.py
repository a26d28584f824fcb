"""Exact elements of K = k((t)) represented by rational functions in t.

A ``Scalar`` is num/den with gcd(num, den) = 1 and den monic.  Elements with
valuation >= 0 are the elements of R = k[t]_(t); the t-adic valuation is
ord_t(num) - ord_t(den).
"""

from __future__ import annotations

from fractions import Fraction

from . import upoly
from .field import BaseField

INF = float("inf")


def _reduce(k, num, den):
    if not den:
        raise ZeroDivisionError("Scalar with zero denominator")
    if not num:
        return (), (k.one,)
    if len(den) > 1:
        g = upoly.gcd(num, den)
        if len(g) > 1:
            num = upoly.exact_div(num, g)
            den = upoly.exact_div(den, g)
    lc = den[-1]
    if lc != 1:
        inv = 1 / lc
        num = upoly.scale(num, inv)
        den = upoly.scale(den, inv)
    return num, den


class Scalar:
    __slots__ = ("k", "num", "den")

    def __init__(self, k: BaseField, num=(), den=None, _canonical=False):
        self.k = k
        if _canonical:
            self.num = num
            self.den = den
            return
        num = upoly.norm(k(c) for c in num)
        den = (k.one,) if den is None else upoly.norm(k(c) for c in den)
        self.num, self.den = _reduce(k, num, den)

    # construction helpers -------------------------------------------------
    @classmethod
    def const(cls, k: BaseField, c) -> "Scalar":
        c = k(c)
        return cls(k, (c,) if c else (), (k.one,), _canonical=True)

    @classmethod
    def t_power(cls, k: BaseField, n: int) -> "Scalar":
        if n >= 0:
            return cls(k, (k.zero,) * n + (k.one,), (k.one,), _canonical=True)
        return cls(k, (k.one,), (k.zero,) * (-n) + (k.one,), _canonical=True)

    @classmethod
    def poly(cls, k: BaseField, coeffs) -> "Scalar":
        return cls(k, coeffs)

    def _new(self, num, den):
        n, d = _reduce(self.k, num, den)
        return Scalar(self.k, n, d, _canonical=True)

    def _poly(self, num):
        return Scalar(self.k, num, (self.k.one,), _canonical=True)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)) or hasattr(other, "p"):
            return Scalar.const(self.k, other)
        return None

    # predicates ------------------------------------------------------------
    def is_poly(self) -> bool:
        return len(self.den) == 1

    def is_const(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def __bool__(self):
        return bool(self.num)

    def valuation(self):
        if not self.num:
            return INF
        return upoly.order(self.num) - upoly.order(self.den)

    def in_R(self) -> bool:
        return not self.num or self.valuation() >= 0

    def is_unit_R(self) -> bool:
        return bool(self.num) and self.valuation() == 0

    def const_value(self):
        if not self.is_const():
            raise ValueError("%s is not a constant" % self)
        return self.num[0] if self.num else self.k.zero

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if len(self.den) == 1 and len(o.den) == 1:
            return self._poly(upoly.add(self.num, o.num))
        if self.den == o.den:
            return self._new(upoly.add(self.num, o.num), self.den)
        return self._new(
            upoly.add(upoly.mul(self.num, o.den), upoly.mul(o.num, self.den)),
            upoly.mul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.k, upoly.neg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return Scalar(self.k, (), (self.k.one,), _canonical=True)
        if len(self.den) == 1 and len(o.den) == 1:
            return self._poly(upoly.mul(self.num, o.num))
        return self._new(upoly.mul(self.num, o.num), upoly.mul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        lc = self.num[-1]
        inv = 1 / lc
        return Scalar(self.k, upoly.scale(self.den, inv), upoly.scale(self.num, inv), _canonical=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num:
            raise ZeroDivisionError("division by zero Scalar")
        if len(o.num) == 1 and len(o.den) == 1:
            c = 1 / o.num[0]
            return Scalar(self.k, upoly.scale(self.num, c), self.den, _canonical=True)
        return self._new(upoly.mul(self.num, o.den), upoly.mul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        one = self.k.one
        return Scalar(self.k, upoly.power(self.num, n, one), upoly.power(self.den, n, one), _canonical=True)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # t-adic structure --------------------------------------------------------
    def split_unit(self):
        """Return (v, u) with self = t^v * u and u a unit of R."""
        v = self.valuation()
        if v == INF:
            raise ValueError("zero has no unit part")
        return v, self * Scalar.t_power(self.k, -v)

    def reduce_mod_t(self):
        """Residue in k of an element of R."""
        if not self.in_R():
            raise ValueError("%s is not in R" % self)
        if not self.num or upoly.order(self.num) > 0:
            return self.k.zero
        return self.num[0] / self.den[0]

    def series(self, n: int):
        """First n coefficients of the t-adic expansion (requires valuation >= 0)."""
        if not self.in_R():
            raise ValueError("negative valuation; use a Laurent shift")
        zero = self.k.zero
        num = list(self.num) + [zero] * n
        den = self.den
        inv = 1 / den[0]
        out = []
        rem = num[:n]
        for i in range(n):
            c = rem[i] * inv
            out.append(c)
            if c:
                for j in range(1, len(den)):
                    if i + j < n:
                        rem[i + j] = rem[i + j] - c * den[j]
        return out

    def to_str(self) -> str:
        fmt = self.k.to_str
        n = upoly.to_str(self.num, "t", fmt)
        if len(self.den) == 1:
            return n
        d = upoly.to_str(self.den, "t", fmt)
        if len(self.num) > 1 or n.startswith("-") or "/" in n:
            n = "(%s)" % n
        if len([c for c in self.den if c]) > 1:
            d = "(%s)" % d
        return "%s/%s" % (n, d)

    __str__ = to_str

    def __repr__(self):
        return "Scalar(%s)" % self.to_str()


def tadic_valuation(s: Scalar, ramification: int = 1):
    """Valuation normalized by v(t) = 1; in ramified mode s is read in k((u)), u^e = t."""
    v = s.valuation()
    if v == INF:
        return INF
    return Fraction(v, ramification)


class FunctionField:
    """Coefficient domain K = k(t) for MultiPoly, exposing the BaseField protocol."""

    __slots__ = ("k",)

    def __init__(self, k: BaseField):
        self.k = k

    @property
    def characteristic(self):
        return self.k.characteristic

    @property
    def zero(self):
        return Scalar.const(self.k, 0)

    @property
    def one(self):
        return Scalar.const(self.k, 1)

    def t(self) -> Scalar:
        return Scalar.t_power(self.k, 1)

    def __call__(self, x):
        if isinstance(x, Scalar):
            return x
        return Scalar.const(self.k, x)

    def to_str(self, c: Scalar) -> str:
        s = c.to_str()
        if c.is_const():
            return s
        return "(%s)" % s

    def __eq__(self, other):
        return isinstance(other, FunctionField) and other.k == self.k

    def __hash__(self):
        return hash(("FunctionField", self.k.p))

    def __repr__(self):
        return "FunctionField(%s(t))" % self.k.kind
