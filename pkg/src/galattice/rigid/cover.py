"""Čech vanishing on the cover of the unit disc by {v(z) >= q} and {0 <= v(z) <= q}."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

from ..arith.field import BaseField
from .tate import (CousinSplit, PolydiscDomain, TateChunk, annulus, circle, cousin_solve, disc,
                   random_chunk, sup_valuation, vq_membership)


@dataclass
class CocycleCheck:
    split: CousinSplit
    in_twist: bool
    g_disc: TateChunk
    g_annulus: TateChunk
    coboundary_ok: bool
    twist_preserved: bool

    @property
    def ok(self) -> bool:
        return self.split.readds and self.split.bounds_hold and self.coboundary_ok and self.twist_preserved

    def as_dict(self):
        d = self.split.as_dict()
        d.update({"in_twist": self.in_twist, "g_disc": str(self.g_disc), "g_annulus": str(self.g_annulus),
                  "coboundary_ok": self.coboundary_ok, "twist_preserved": self.twist_preserved, "ok": self.ok})
        return d


@dataclass
class DiscCechReport:
    q: Fraction
    twist: Fraction
    precision: Optional[int]
    seed: Optional[int]
    checks: List[CocycleCheck] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(1 for c in self.checks if not c.ok)

    @property
    def all_split(self) -> bool:
        return self.failures == 0

    def as_dict(self):
        return {"q": str(self.q), "twist": str(self.twist), "precision": self.precision, "seed": self.seed,
                "cocycles": len(self.checks), "failures": self.failures, "all_split": self.all_split,
                "checks": [c.as_dict() for c in self.checks]}


def check_cocycle(f: TateChunk, q, twist) -> CocycleCheck:
    """Split the overlap section f as g_annulus - g_disc and verify everything."""
    q, twist = Fraction(q), Fraction(twist)
    sp = cousin_solve(f, q)
    g_disc = -sp.f_plus
    g_ann = sp.f_minus
    coboundary_ok = (g_ann - g_disc).equals(f)
    in_twist = vq_membership(f, PolydiscDomain([circle(q)]), twist)
    preserved = (not in_twist) or (
        vq_membership(g_disc, PolydiscDomain([disc(q)]), twist)
        and vq_membership(g_ann, PolydiscDomain([annulus(0, q)]), twist))
    return CocycleCheck(sp, in_twist, g_disc, g_ann, coboundary_ok, preserved)


def random_cocycle(k: BaseField, rng: random.Random, q, twist, prec: int, width: int = 4) -> TateChunk:
    """Random Laurent chunk pushed into O(c^twist) on the circle v(z) = q."""
    f = random_chunk(k, rng, prec, range(-width, width + 1))
    if not f:
        return f
    v = sup_valuation(f, PolydiscDomain([circle(q)]))
    if v <= twist:
        shift = int((Fraction(twist) - v) // 1) + 1
        f = f.times_t(shift)
    return f


def rigid_cech_disc(q=1, twist=0, cocycles: Optional[Sequence[TateChunk]] = None, k: Optional[BaseField] = None,
                    count: int = 50, N: int = 12, seed: int = 0) -> DiscCechReport:
    """Split given (or ``count`` seeded random) 1-cocycles in O(c^twist) on the overlap."""
    q, twist = Fraction(q), Fraction(twist)
    if q < 0:
        raise ValueError("q must be >= 0")
    if cocycles is None:
        k = k or BaseField(0)
        rng = random.Random(seed)
        cocycles = [random_cocycle(k, rng, q, twist, N) for _ in range(count)]
        report = DiscCechReport(q, twist, N, seed)
    else:
        report = DiscCechReport(q, twist, None, None)
    for f in cocycles:
        report.checks.append(check_cocycle(f, q, twist))
    return report
