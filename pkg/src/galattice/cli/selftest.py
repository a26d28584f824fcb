"""Fast end-to-end checks behind ``galattice selftest``."""

from __future__ import annotations

import random
import time
from fractions import Fraction
from importlib import resources
from typing import Dict, List

from ..arith.field import BaseField
from ..lattice.cohomology import cohomology_lattice
from ..models.gasheaf import ga_membership
from ..rigid.cover import rigid_cech_disc
from ..rigid.pn import PnCech
from .gal import parse_model_file, print_model_file


def bundled_files() -> Dict[str, str]:
    root = resources.files("galattice") / "data"
    return {p.name: p.read_text(encoding="utf-8") for p in sorted(root.iterdir(), key=lambda p: p.name)
            if p.name.endswith(".gal")}


def _check(name, fn) -> Dict[str, object]:
    t0 = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # reported, not raised
        ok, detail = False, "%s: %s" % (type(exc).__name__, exc)
    return {"name": name, "passed": bool(ok), "detail": detail,
            "seconds": round(time.perf_counter() - t0, 3)}


def run_selftest(seed: int = 0) -> List[Dict[str, object]]:
    files = bundled_files()

    def roundtrip():
        bad = [n for n, text in files.items()
               if parse_model_file(print_model_file(parse_model_file(text))) != parse_model_file(text)]
        return not bad, "files: %d, mismatches: %s" % (len(files), bad or "none")

    def p1_lattice():
        mf = parse_model_file(files["projective.gal"])
        rep = cohomology_lattice(mf.model("P1"), 0)
        ok = rep.rank == 1 and rep.torsion_exponents == [] and rep.certified
        return ok, "rank %d, torsion %s, basis %s" % (rep.rank, rep.torsion_exponents, rep.basis)

    def ga_ramified():
        mf = parse_model_file(files["charts.gal"])
        ch = mf.chart("ramified")
        x = ch.ring.var("x")
        a = ga_membership(x, ch, 0).member
        b = ga_membership(ch.ring.one(), ch, 0).member
        return a and not b, "x: %s, 1: %s" % (a, b)

    def rigid():
        rep = rigid_cech_disc(1, 0, count=10, N=8, seed=seed)
        return rep.all_split, "failures: %d of %d" % (rep.failures, len(rep.checks))

    def homotopy():
        cx = PnCech(1, BaseField(0), 2, 6, Fraction(1))
        rng = random.Random(seed)
        bad = 0
        for _ in range(20):
            p, x = cx.random_monomial_cochain(rng, terms=2)
            bad += not cx.homotopy_identity(p, x)
        return bad == 0, "failures: %d of 20" % bad

    return [_check("gal round trip", roundtrip), _check("P1 lattice H^0", p1_lattice),
            _check("G_a membership on x^2 - t", ga_ramified), _check("disc cover splitting", rigid),
            _check("P^1 homotopy", homotopy)]
