"""Truncated (Laurent/Puiseux) power series with precision tracking.

A series represents sum_i c_i u^(shift+i) + O(u^prec) where u = t^(1/e).
``prec = None`` marks an exact finite series.  Arithmetic tracks absolute
precision the usual way: a*b is known modulo u^min(prec_a + v(b), prec_b + v(a)).
"""

from __future__ import annotations

from fractions import Fraction

from .field import BaseField
from .scalar import INF, Scalar


def _pmin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class TruncatedSeries:
    __slots__ = ("k", "shift", "coeffs", "prec", "e")

    def __init__(self, k: BaseField, coeffs, shift: int = 0, prec=None, e: int = 1):
        if e < 1:
            raise ValueError("ramification index must be >= 1")
        self.k = k
        self.e = e
        coeffs = [k(c) for c in coeffs]
        if prec is not None:
            coeffs = coeffs[: max(0, prec - shift)]
        i = 0
        while i < len(coeffs) and not coeffs[i]:
            i += 1
        shift += i
        coeffs = coeffs[i:]
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        if not coeffs and prec is not None:
            shift = prec
        self.shift = shift
        self.coeffs = tuple(coeffs)
        self.prec = prec

    # constructors ----------------------------------------------------------
    @classmethod
    def zero(cls, k, prec=None, e=1):
        return cls(k, (), 0, prec, e)

    @classmethod
    def const(cls, k, c, prec=None, e=1):
        return cls(k, (c,), 0, prec, e)

    @classmethod
    def gen(cls, k, e=1, prec=None):
        """The uniformizer u = t^(1/e)."""
        return cls(k, (1,), 1, prec, e)

    @classmethod
    def from_scalar(cls, s: Scalar, n: int, e: int = 1) -> "TruncatedSeries":
        """Expansion of s in u = t^(1/e) modulo u^n."""
        k = s.k
        if not s:
            return cls.zero(k, n, e)
        v, unit = s.split_unit()
        if n < min(0, v * e):
            raise ValueError("precision %d below the Laurent shift %d" % (n, v * e))
        m = max(0, -(-(n - v * e) // e))
        coeffs = unit.series(m)
        spread = []
        for c in coeffs:
            spread.append(c)
            spread.extend([k.zero] * (e - 1))
        return cls(k, spread, v * e, n, e)

    def _like(self, coeffs, shift, prec):
        return TruncatedSeries(self.k, coeffs, shift, prec, self.e)

    # inspection ------------------------------------------------------------
    @property
    def precision(self):
        return self.prec

    def is_exact(self) -> bool:
        return self.prec is None

    def is_zero(self) -> bool:
        """Zero as far as the precision allows."""
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def valuation_u(self):
        """Valuation in u-units; None if the series is zero to its (finite) precision."""
        if self.coeffs:
            return self.shift
        return INF if self.prec is None else None

    def valuation(self):
        """t-adic valuation (v(t) = 1), exact rational or INF; None if undetermined."""
        v = self.valuation_u()
        if v is None or v == INF:
            return v
        return Fraction(v, self.e)

    def lower_bound_u(self):
        v = self.valuation_u()
        if v is None:
            return self.prec
        return v

    def coefficient(self, i: int):
        j = i - self.shift
        if 0 <= j < len(self.coeffs):
            return self.coeffs[j]
        if self.prec is not None and i >= self.prec:
            raise ValueError("coefficient %d beyond precision %d" % (i, self.prec))
        return self.k.zero

    def leading(self):
        return self.coeffs[0] if self.coeffs else self.k.zero

    def dense(self, n: int):
        """Coefficients of u^0..u^(n-1) (requires shift >= 0 on nonzero terms)."""
        return [self.coefficient(i) for i in range(n)]

    # arithmetic ------------------------------------------------------------
    def _check(self, other):
        if isinstance(other, TruncatedSeries):
            if other.e != self.e:
                raise ValueError("mixed ramification indices %d and %d" % (self.e, other.e))
            return other
        return TruncatedSeries(self.k, (other,), 0, None, self.e)

    def __add__(self, other):
        o = self._check(other)
        prec = _pmin(self.prec, o.prec)
        lo = min(self.shift, o.shift)
        hi = max(self.shift + len(self.coeffs), o.shift + len(o.coeffs))
        if prec is not None:
            hi = min(hi, prec)
        zero = self.k.zero
        out = [zero] * max(0, hi - lo)
        for src in (self, o):
            for i, c in enumerate(src.coeffs):
                j = src.shift + i - lo
                if 0 <= j < len(out):
                    out[j] = out[j] + c
        return self._like(out, lo, prec)

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs], self.shift, self.prec)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def _lower_bound(self):
        if self.coeffs:
            return self.shift
        return INF if self.prec is None else self.prec

    def __mul__(self, other):
        o = self._check(other)
        la, lb = self._lower_bound(), o._lower_bound()
        if la == INF or lb == INF:
            return self._like((), 0, None)
        prec = None
        if self.prec is not None:
            prec = self.prec + lb
        if o.prec is not None:
            prec = _pmin(prec, o.prec + la)
        if not self.coeffs or not o.coeffs:
            return self._like((), 0, prec)
        lo = self.shift + o.shift
        n = len(self.coeffs) + len(o.coeffs) - 1
        if prec is not None:
            n = min(n, prec - lo)
        zero = self.k.zero
        out = [zero] * max(0, n)
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(o.coeffs):
                if i + j >= n:
                    break
                out[i + j] = out[i + j] + a * b
        return self._like(out, lo, prec)

    __rmul__ = __mul__

    def shift_by(self, n: int) -> "TruncatedSeries":
        """Multiply by u^n."""
        return self._like(self.coeffs, self.shift + n, None if self.prec is None else self.prec + n)

    def inverse(self, default_prec: int = 20) -> "TruncatedSeries":
        if not self.coeffs:
            raise ZeroDivisionError("inverse of a series that is zero to its precision")
        v = self.shift
        rel = (self.prec - v) if self.prec is not None else None
        if rel is None:
            if len(self.coeffs) == 1:
                return self._like([1 / self.coeffs[0]], -v, None)
            rel = default_prec
        a = self.coeffs
        inv0 = 1 / a[0]
        zero = self.k.zero
        b = [zero] * rel
        for i in range(rel):
            acc = self.k.one if i == 0 else zero
            for j in range(1, min(i, len(a) - 1) + 1):
                acc = acc - a[j] * b[i - j]
            b[i] = acc * inv0
        return self._like(b, -v, rel - v)

    def __truediv__(self, other):
        o = self._check(other)
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self._like((1,), 0, None)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def truncate(self, n: int) -> "TruncatedSeries":
        return self._like(self.coeffs, self.shift, _pmin(self.prec, n))

    def agrees_with(self, other, upto=None) -> bool:
        """Equality up to the shared precision (and ``upto`` if given)."""
        d = self - other
        if upto is not None:
            d = d.truncate(upto)
        return d.is_zero()

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.e, self.shift if self.coeffs else None, self.coeffs, self.prec) == (
            other.e, other.shift if other.coeffs else None, other.coeffs, other.prec)

    def __hash__(self):
        return hash((self.e, self.coeffs, self.prec))

    def _mono(self, n: int) -> str:
        q = Fraction(n, self.e)
        if q == 1:
            return "t"
        if q.denominator == 1:
            return "t^%d" % q.numerator
        return "t^(%s)" % q

    def to_str(self) -> str:
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            n = self.shift + i
            cs = self.k.to_str(c)
            if n == 0:
                parts.append(cs)
            else:
                mono = self._mono(n)
                parts.append(mono if cs == "1" else ("-" + mono if cs == "-1" else "%s*%s" % (cs, mono)))
        s = " + ".join(parts).replace("+ -", "- ") if parts else "0"
        if self.prec is not None:
            s += " + O(%s)" % self._mono(self.prec) if self.prec else " + O(1)"
        return s

    __str__ = to_str

    def __repr__(self):
        return "TruncatedSeries(%s)" % self.to_str()


def truncate_series(s: Scalar, n: int) -> TruncatedSeries:
    """t-adic expansion of s modulo t^n."""
    return TruncatedSeries.from_scalar(s, n)


def series_to_scalar(f: TruncatedSeries) -> Scalar:
    """Exact Scalar with the same coefficients (the truncation is forgotten)."""
    if f.e != 1:
        raise ValueError("ramified series has no Scalar counterpart")
    k = f.k
    if not f.coeffs:
        return Scalar.const(k, 0)
    num = tuple(f.coeffs)
    if f.shift >= 0:
        return Scalar(k, (k.zero,) * f.shift + num)
    return Scalar(k, num) * Scalar.t_power(k, f.shift)
