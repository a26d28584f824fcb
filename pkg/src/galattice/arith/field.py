"""Coefficient fields: the rationals and prime fields F_p."""

from __future__ import annotations

import random
from fractions import Fraction


class Fp:
    """Element of a prime field.  Subclassed once per prime (see ``_fp_class``)."""

    __slots__ = ("v",)
    p = 0

    def __init__(self, v):
        self.v = v % self.p

    def _coerce(self, other):
        if type(other) is type(self):
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__class__(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__class__(self.v - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__class__(o - self.v)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.__class__(self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return self.__class__(self.v * pow(o, -1, self.p))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return self.__class__(o * pow(self.v, -1, self.p))

    def __neg__(self):
        return self.__class__(-self.v)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if n < 0:
            if self.v == 0:
                raise ZeroDivisionError("division by zero in F_%d" % self.p)
            return self.__class__(pow(pow(self.v, -1, self.p), -n, self.p))
        return self.__class__(pow(self.v, n, self.p))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.v == o

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return "Fp(%d, p=%d)" % (self.v, self.p)

    def __str__(self):
        return str(self.v)

    def signed(self) -> int:
        """Representative in (-p/2, p/2], used for printing."""
        return self.v - self.p if self.v > self.p // 2 else self.v


_FP_CLASSES: dict[int, type] = {}


def _fp_class(p: int) -> type:
    cls = _FP_CLASSES.get(p)
    if cls is None:
        cls = type("F%d" % p, (Fp,), {"__slots__": (), "p": p})
        _FP_CLASSES[p] = cls
    return cls


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class BaseField:
    """The coefficient field k: ``BaseField.rationals()`` or ``BaseField.prime(p)``."""

    __slots__ = ("p", "_elt")

    def __init__(self, p: int = 0):
        if p and not is_prime(p):
            raise ValueError("F_%d: %d is not prime" % (p, p))
        self.p = p
        self._elt = _fp_class(p) if p else Fraction

    @classmethod
    def rationals(cls) -> "BaseField":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "BaseField":
        return cls(p)

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def kind(self) -> str:
        return "F%d" % self.p if self.p else "Q"

    def __call__(self, x):
        if self.p:
            if isinstance(x, Fp):
                if x.p != self.p:
                    raise ValueError("element of F_%d passed to F_%d" % (x.p, self.p))
                return x
            if isinstance(x, Fraction):
                return self._elt(x.numerator) / x.denominator
            return self._elt(int(x))
        if isinstance(x, Fp):
            raise ValueError("prime-field element passed to Q")
        return Fraction(x)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, BaseField) and other.p == self.p

    def __hash__(self):
        return hash(("BaseField", self.p))

    def __repr__(self):
        return "BaseField(%s)" % self.kind

    def elements(self):
        if not self.p:
            raise ValueError("Q is infinite")
        return [self._elt(i) for i in range(self.p)]

    def small_elements(self, bound: int = 3):
        """A deterministic finite list of 'small' elements, zero first."""
        if self.p:
            return self.elements()
        out = [Fraction(0)]
        for n in range(1, bound + 1):
            out += [Fraction(n), Fraction(-n)]
        out += [Fraction(1, 2), Fraction(-1, 2)]
        return out

    def random_element(self, rng: random.Random, bound: int = 5):
        if self.p:
            return self._elt(rng.randrange(self.p))
        return Fraction(rng.randint(-bound, bound))

    def to_str(self, c) -> str:
        if self.p:
            return str(c.signed())
        return str(c)
