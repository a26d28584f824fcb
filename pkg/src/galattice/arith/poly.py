"""Sparse multivariate polynomials over k or K.

A ``PolyRing`` fixes the ordered variable names and the coefficient domain
(a ``BaseField`` or a ``FunctionField``).  A ``MultiPoly`` maps exponent
tuples to nonzero coefficients; iteration order is descending lexicographic
on exponent tuples so printing and hashing are deterministic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class PolyRing:
    __slots__ = ("names", "dom", "_index")

    def __init__(self, names: Sequence[str], dom):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names in %s" % (names,))
        self.names = names
        self.dom = dom
        self._index = {n: i for i, n in enumerate(names)}

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError("variable %r not in ring %s" % (name, self.names)) from None

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.names == other.names and self.dom == other.dom

    def __hash__(self):
        return hash((self.names, self.dom))

    def __repr__(self):
        return "PolyRing(%s, %r)" % (", ".join(self.names), self.dom)

    # element constructors --------------------------------------------------
    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def one(self) -> "MultiPoly":
        return self.const(1)

    def const(self, c) -> "MultiPoly":
        c = self.dom(c)
        return MultiPoly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str) -> "MultiPoly":
        e = [0] * self.nvars
        e[self.index(name)] = 1
        return MultiPoly(self, {tuple(e): self.dom.one})

    def gens(self):
        return [self.var(n) for n in self.names]

    def monomial(self, exps, c=1) -> "MultiPoly":
        c = self.dom(c)
        return MultiPoly(self, {tuple(exps): c} if c else {})

    def from_terms(self, terms) -> "MultiPoly":
        out = {}
        dom = self.dom
        for e, c in terms:
            e = tuple(e)
            c = out.get(e, dom.zero) + dom(c)
            if c:
                out[e] = c
            else:
                out.pop(e, None)
        return MultiPoly(self, out)

    def extend(self, extra: Iterable[str], front: bool = False) -> "PolyRing":
        extra = tuple(extra)
        return PolyRing(extra + self.names if front else self.names + extra, self.dom)

    def with_domain(self, dom) -> "PolyRing":
        return PolyRing(self.names, dom)

    def fresh_name(self, base: str = "_w") -> str:
        i = 0
        while True:
            name = "%s%d" % (base, i)
            if name not in self._index:
                return name
            i += 1


class MultiPoly:
    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # structure -------------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_coeff(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.dom.zero)

    def items(self):
        """Terms in canonical (descending lexicographic) order."""
        return sorted(self.terms.items(), reverse=True)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.ring.index(name)
        return max((e[i] for e in self.terms), default=-1)

    def weighted_degrees(self, weights: Sequence[Sequence[int]]) -> set:
        """Set of multidegrees of the terms; weights[i] is the degree vector of variable i."""
        out = set()
        for e in self.terms:
            d = [0] * len(weights[0]) if weights else []
            for i, a in enumerate(e):
                if a:
                    for j, w in enumerate(weights[i]):
                        d[j] += a * w
            out.add(tuple(d))
        return out

    def variables(self) -> list:
        used = set()
        for e in self.terms:
            for i, a in enumerate(e):
                if a:
                    used.add(i)
        return [self.ring.names[i] for i in sorted(used)]

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.ring.dom.zero)

    def monomials(self):
        return [e for e, _ in self.items()]

    # arithmetic ------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                raise ValueError("ring mismatch: %r vs %r" % (self.ring, other.ring))
            return other
        return self.ring.const(other)

    def __add__(self, other):
        o = self._lift(other)
        if len(o.terms) > len(self.terms):
            big, small = o.terms, self.terms
        else:
            big, small = self.terms, o.terms
        out = dict(big)
        for e, c in small.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MultiPoly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            c = self.ring.dom(other)
            if not c:
                return self.ring.zero()
            return MultiPoly(self.ring, {e: v * c for e, v in self.terms.items()})
        o = self._lift(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MultiPoly(self.ring, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant() or not other:
                raise ValueError("use exact_div for polynomial division")
            other = other.constant_coeff()
        return self * (1 / self.ring.dom(other))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def mul_monomial(self, exps, c=None) -> "MultiPoly":
        if c is None:
            return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e, exps)): v for e, v in self.terms.items()})
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {tuple(a + b for a, b in zip(e, exps)): v * c for e, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.items()))
        return self._hash

    # calculus and substitution ---------------------------------------------
    def derivative(self, name: str) -> "MultiPoly":
        i = self.ring.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                d = c * e[i]
                if d:
                    f = list(e)
                    f[i] -= 1
                    out[tuple(f)] = d
        return MultiPoly(self.ring, out)

    def substitute(self, values: dict, ring: PolyRing = None) -> "MultiPoly":
        """Replace variables by polynomials of ``ring`` (default: same ring).

        Variables not in ``values`` must exist in the target ring under the same name.
        """
        ring = ring or self.ring
        images = []
        for n in self.ring.names:
            if n in values:
                v = values[n]
                images.append(v if isinstance(v, MultiPoly) else ring.const(v))
            else:
                images.append(ring.var(n) if n in ring else None)
        cache = {}
        out = ring.zero()
        for e, c in self.terms.items():
            term = ring.const(c)
            for i, a in enumerate(e):
                if not a:
                    continue
                if images[i] is None:
                    raise KeyError("variable %r has no image" % self.ring.names[i])
                key = (i, a)
                p = cache.get(key)
                if p is None:
                    p = images[i] ** a
                    cache[key] = p
                term = term * p
            out = out + term
        return out

    def evaluate(self, point: dict):
        """Evaluate at values for every variable (values support ring arithmetic)."""
        acc = None
        for e, c in self.terms.items():
            v = c
            for i, a in enumerate(e):
                if a:
                    v = v * point[self.ring.names[i]] ** a
            acc = v if acc is None else acc + v
        if acc is None:
            return self.ring.dom.zero
        return acc

    def change_ring(self, ring: PolyRing, convert=None) -> "MultiPoly":
        """Re-embed by variable names; ``convert`` maps coefficients between domains."""
        pos = [ring.index(n) for n in self.ring.names]
        out = {}
        n = ring.nvars
        for e, c in self.terms.items():
            f = [0] * n
            for i, a in enumerate(e):
                if a:
                    f[pos[i]] = a
            out[tuple(f)] = convert(c) if convert else c
        if convert:
            out = {e: c for e, c in out.items() if c}
        return MultiPoly(ring, out)

    def to_ring(self, ring: PolyRing) -> "MultiPoly":
        """Move into a ring with the same domain that contains every used variable."""
        used = self.variables()
        pos = {i: ring.index(self.ring.names[i]) for i in range(self.ring.nvars) if self.ring.names[i] in used}
        out = {}
        for e, c in self.terms.items():
            f = [0] * ring.nvars
            for i, a in enumerate(e):
                if a:
                    f[pos[i]] = a
            out[tuple(f)] = c
        return MultiPoly(ring, out)

    def monic(self, order_key=None) -> "MultiPoly":
        if not self.terms:
            return self
        if order_key is None:
            lead = max(self.terms)
        else:
            lead = max(self.terms, key=order_key)
        return self * (1 / self.terms[lead])

    # printing --------------------------------------------------------------
    def to_str(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.names
        fmt = self.ring.dom.to_str
        pieces = []
        for e, c in self.items():
            mono = "*".join(
                names[i] if a == 1 else "%s^%d" % (names[i], a) for i, a in enumerate(e) if a
            )
            cs = fmt(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            if "/" in cs and not cs.startswith("("):
                cs = "(%s)" % cs
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = "%s*%s" % (cs, mono)
            pieces.append((neg, body))
        out = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    __str__ = to_str

    def __repr__(self):
        return "MultiPoly(%s)" % self.to_str()


def poly_from_int_terms(ring: PolyRing, terms) -> MultiPoly:
    """Convenience: ``[(exps, int_or_Fraction), ...]``."""
    return ring.from_terms((e, ring.dom(Fraction(c) if not hasattr(c, "p") else c)) for e, c in terms)
