"""Monomial orders as flat integer sort keys (bigger key = bigger monomial)."""

from __future__ import annotations

from typing import Sequence


def _grevlex(e):
    return (sum(e),) + tuple(-a for a in reversed(e))


class MonomialOrder:
    """lex, grevlex, block elimination, or weighted (grevlex tie-break).

    ``blocks`` lists block sizes from the first variable on; each block is
    compared by grevlex and earlier blocks dominate.
    """

    __slots__ = ("kind", "blocks", "weights", "_cache")

    def __init__(self, kind: str = "grevlex", blocks: Sequence[int] = (), weights: Sequence[int] = ()):
        if kind not in ("lex", "grevlex", "block", "weighted"):
            raise ValueError("unknown monomial order %r" % kind)
        if kind == "block" and (not blocks or any(b < 0 for b in blocks)):
            raise ValueError("block order needs non-negative block sizes")
        if kind == "weighted" and any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        self.kind = kind
        self.blocks = tuple(blocks)
        self.weights = tuple(weights)
        self._cache = {}

    @classmethod
    def lex(cls):
        return cls("lex")

    @classmethod
    def grevlex(cls):
        return cls("grevlex")

    @classmethod
    def elimination(cls, first: int, rest: int = None):
        """First ``first`` variables eliminated (block order, grevlex inside)."""
        return cls("block", (first,) if rest is None else (first, rest))

    @classmethod
    def weighted(cls, weights):
        return cls("weighted", weights=weights)

    def key(self, e):
        k = self._cache.get(e)
        if k is not None:
            return k
        if self.kind == "lex":
            k = e
        elif self.kind == "grevlex":
            k = _grevlex(e)
        elif self.kind == "weighted":
            k = (sum(w * a for w, a in zip(self.weights, e)),) + _grevlex(e)
        else:
            k = ()
            pos = 0
            for b in self.blocks:
                k += _grevlex(e[pos:pos + b])
                pos += b
            if pos < len(e):
                k += _grevlex(e[pos:])
        if len(self._cache) > 200000:
            self._cache.clear()
        self._cache[e] = k
        return k

    def signature(self):
        return (self.kind, self.blocks, self.weights)

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        if self.kind == "block":
            return "MonomialOrder(block%s)" % (self.blocks,)
        if self.kind == "weighted":
            return "MonomialOrder(weighted%s)" % (self.weights,)
        return "MonomialOrder(%s)" % self.kind


LEX = MonomialOrder.lex()
GREVLEX = MonomialOrder.grevlex()
