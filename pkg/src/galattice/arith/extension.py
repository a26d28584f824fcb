"""Simple algebraic extensions k' = k[a]/(m(a)) of a base field.

Only used by the place search, which adjoins one root of an irreducible
residual polynomial of degree 2 or 3 (no roots in k, so irreducible).
"""

from __future__ import annotations

import random
from itertools import product

from . import upoly
from .field import BaseField


class AlgebraicElement:
    __slots__ = ("F", "c")

    def __init__(self, F: "ExtensionField", c):
        self.F = F
        self.c = upoly.divmod_(upoly.norm(c), F.modulus)[1] if len(c) >= len(F.modulus) else upoly.norm(c)

    def _coerce(self, other):
        if isinstance(other, AlgebraicElement):
            if other.F != self.F:
                raise ValueError("elements of different extensions")
            return other.c
        try:
            return upoly.norm((self.F.base(other),))
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(self.F, upoly.add(self.c, o))

    __radd__ = __add__

    def __neg__(self):
        return AlgebraicElement(self.F, upoly.neg(self.c))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(self.F, upoly.sub(self.c, o))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(self.F, upoly.sub(o, self.c))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(self.F, upoly.mul(self.c, o))

    __rmul__ = __mul__

    def inverse(self) -> "AlgebraicElement":
        if not self.c:
            raise ZeroDivisionError("division by zero in %s" % self.F.kind)
        # extended Euclid: s*c + u*m = 1
        one = self.F.base.one
        r0, r1 = self.F.modulus, self.c
        s0, s1 = (), (one,)
        while r1:
            q, r = upoly.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, upoly.sub(s0, upoly.mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("modulus of %s is reducible" % self.F.kind)
        return AlgebraicElement(self.F, upoly.scale(s0, one / r0[0]))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * AlgebraicElement(self.F, o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return AlgebraicElement(self.F, o) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** -n
        return AlgebraicElement(self.F, upoly.powmod(self.c, n, self.F.modulus, self.F.base.one))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o

    def __hash__(self):
        return hash((self.F.modulus, self.c))

    def __bool__(self):
        return bool(self.c)

    def __repr__(self):
        return "AlgebraicElement(%s in %s)" % (self.F.to_str(self), self.F.kind)


class ExtensionField:
    """k[a]/(m); ``modulus`` is monic and irreducible over ``base`` (not re-checked)."""

    __slots__ = ("base", "modulus", "name")

    def __init__(self, base: BaseField, modulus, name: str = "a"):
        m = upoly.norm(tuple(base(c) for c in modulus))
        if len(m) < 2:
            raise ValueError("extension modulus must have positive degree")
        self.base = base
        self.modulus = upoly.monic(m)
        self.name = name

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def characteristic(self) -> int:
        return self.base.p

    @property
    def is_finite(self) -> bool:
        return self.base.is_finite

    @property
    def kind(self) -> str:
        return "%s(%s), %s = 0" % (self.base.kind, self.name, self.minimal_polynomial())

    def minimal_polynomial(self) -> str:
        return upoly.to_str(self.modulus, self.name, self.base.to_str)

    def __call__(self, x):
        if isinstance(x, AlgebraicElement):
            if x.F != self:
                raise ValueError("element of another extension")
            return x
        return AlgebraicElement(self, (self.base(x),))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def gen(self):
        return AlgebraicElement(self, (self.base.zero, self.base.one))

    def __eq__(self, other):
        return isinstance(other, ExtensionField) and other.base == self.base and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ExtensionField", self.base, self.modulus))

    def __repr__(self):
        return "ExtensionField(%s)" % self.kind

    def elements(self):
        if not self.base.is_finite:
            raise ValueError("%s is infinite" % self.kind)
        return [AlgebraicElement(self, c) for c in product(self.base.elements(), repeat=self.degree)]

    def small_elements(self, bound: int = 3):
        return [self(c) for c in self.base.small_elements(bound)]

    def random_element(self, rng: random.Random, bound: int = 5):
        return AlgebraicElement(self, [self.base.random_element(rng, bound) for _ in range(self.degree)])

    def to_str(self, x) -> str:
        s = upoly.to_str(self(x).c, self.name, self.base.to_str)
        if len([c for c in self(x).c if c]) > 1:
            return "(%s)" % s
        return s
