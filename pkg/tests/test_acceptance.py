"""Acceptance criteria: one PASS/FAIL line per criterion, with its time limit."""

import random
import time

import pytest

from galattice.cli import parse_model_file
from galattice.cli.selftest import bundled_files
from galattice.ideals import Ideal
from galattice.lattice.cohomology import (charpoly_integrality, cohomology_lattice, compare_generic,
                                          morphism_action, pullback_matrix, quasi_unipotence_check,
                                          relative_dimension, sandwich_check)
from galattice.lattice.linalg import in_gl_R
from galattice.lattice.model import GradedMorphism, blowup_model, product_with_p1, projection_to
from galattice.models.chart import verify_chart
from galattice.models.gasheaf import ga_membership
from galattice.models.normalize import normalize, verify_normalization
from galattice.models.places import place_witness_search
from galattice.rigid.cover import rigid_cech_disc
from galattice.rigid.pn import PnCech

FILES = {name: parse_model_file(text) for name, text in bundled_files().items()}
PROJ = FILES["projective.gal"]
SEED = 20240


@pytest.fixture
def report(capsys):
    def emit(number, title, failures, elapsed, limit):
        ok = not failures and (limit is None or elapsed < limit)
        bound = "" if limit is None else " < %gs" % limit
        with capsys.disabled():
            print("\n%s criterion %d: %s (%.1fs%s)%s" % (
                "PASS" if ok else "FAIL", number, title, elapsed, bound,
                "" if not failures else " failures: %s" % "; ".join(failures)))
        assert not failures, failures
        assert limit is None or elapsed < limit, "%.1fs over the %gs limit" % (elapsed, limit)
    return emit


def _lattice_equal(base, other, f, i, failures, label):
    a = cohomology_lattice(base, i)
    b = cohomology_lattice(other, i)
    if not (a.certified and b.certified):
        failures.append("%s H^%d not certified" % (label, i))
    if (a.rank, a.torsion_exponents) != (b.rank, b.torsion_exponents):
        failures.append("%s H^%d: %s vs %s" % (label, i, (a.rank, a.torsion_exponents), (b.rank, b.torsion_exponents)))
    elif a.rank and not in_gl_R(pullback_matrix(f, a.homology, b.homology), base.k):
        failures.append("%s H^%d: pullback does not identify the lattices" % (label, i))


# 1 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["P1", "P2"])
def test_criterion_1_projective_lattices(name, report):
    t0 = time.perf_counter()
    M = PROJ.model(name)
    failures = []
    for i in range(relative_dimension(M) + 1):
        rep = cohomology_lattice(M, i, r=0)
        if not rep.certified:
            failures.append("H^%d not certified" % i)
        if i == 0:
            if (rep.rank, rep.torsion_exponents) != (1, []):
                failures.append("H^0 = %s" % ((rep.rank, rep.torsion_exponents),))
            elif any(set(b.values()) != {"t"} for b in rep.basis):
                failures.append("H^0 basis %s" % rep.basis)
        elif (rep.rank, rep.torsion_exponents) != (0, []):
            failures.append("H^%d = %s" % (i, (rep.rank, rep.torsion_exponents)))
    report(1, "%s lattices H^0 = tR, H^>0 = 0" % name, failures, time.perf_counter() - t0, 30)


# 2 -------------------------------------------------------------------------------------

def test_criterion_2_ga_membership_ramified(report):
    t0 = time.perf_counter()
    ch = FILES["charts.gal"].chart("ramified")
    x, one = ch.ring.var("x"), ch.ring.one()
    failures = []
    cert = ga_membership(x, ch, 0)
    if not (cert.member and cert.route == "rabinowitsch" and cert.exponent is not None):
        failures.append("x: %s" % cert)
    if place_witness_search(x, ch, 0, e_max=6) is not None:
        failures.append("x has a place witness")
    cert = ga_membership(one, ch, 0)
    w = place_witness_search(one, ch, 0, e_max=6)
    if cert.member:
        failures.append("1 reported a member")
    if w is None or w.value != 0:
        failures.append("1: witness %s" % (w and w.as_dict()))
    report(2, "G_a(0) on x^2 - t", failures, time.perf_counter() - t0, 5)


# 3 -------------------------------------------------------------------------------------

def test_criterion_3_blowup_invariance(report):
    t0 = time.perf_counter()
    M = PROJ.model("P2")
    X, Y = M.ring.var("X"), M.ring.var("Y")
    B = blowup_model(M, [X, Y], name="BlP2")
    f = projection_to(B, M)
    failures = []
    for i in range(3):
        _lattice_equal(M, B, f, i, failures, "Bl P2")
    report(3, "blowup of P2 at a point", failures, time.perf_counter() - t0, 180)


# 4 -------------------------------------------------------------------------------------

def test_criterion_4_p1_invariance(report):
    t0 = time.perf_counter()
    P1, P1xP1 = PROJ.model("P1"), PROJ.model("P1xP1")
    failures = []
    if len(P1xP1.charts) != 4:
        failures.append("P1xP1 has %d charts" % len(P1xP1.charts))
    f = GradedMorphism(P1xP1, P1, {n: P1xP1.ring.var(n) for n in P1.graded_names}, "pr")
    for i in range(3):
        _lattice_equal(P1, P1xP1, f, i, failures, "P1xP1")
    built = product_with_p1(P1)
    for i in range(3):
        _lattice_equal(P1, built, projection_to(built, P1), i, failures, "P1 x P1 (built)")
    report(4, "P1 x P1 versus P1", failures, time.perf_counter() - t0, 180)


# 5 -------------------------------------------------------------------------------------

@pytest.mark.parametrize("fname, mname, roots, M_expected", [
    ("elliptic_f7.gal", "zeta", {2, 4}, 3),
    ("elliptic_f5.gal", "inv", {4}, 2),
])
def test_criterion_5_integrality_and_qu(fname, mname, roots, M_expected, report):
    t0 = time.perf_counter()
    mf = FILES[fname]
    f = mf.morphism(mname)
    E = f.source
    k = E.k
    failures = []
    act = morphism_action(E, f, 1)
    if not (act.commutes and act.preserves_lattice):
        failures.append("action: commutes %s, integral %s" % (act.commutes, act.preserves_lattice))
    cp = charpoly_integrality(act.lattice_matrix, k)
    if len(cp.coefficients) != 2 or not cp.integral:
        failures.append("charpoly %s" % cp.to_str())
    else:
        c0, c1 = cp.coefficients
        if c1 != 1 or not c0.is_const() or int(str(-c0.reduce_mod_t())) % k.p not in roots:
            failures.append("charpoly %s" % cp.to_str())
    qu = quasi_unipotence_check(cp.coefficients, k)
    if not qu.is_qu or qu.M != M_expected:
        failures.append("quasi-unipotence %s" % qu)
    report(5, "%s on E over F%d: %s, M = %s" % (mname, k.p, cp.to_str(), qu.M),
           failures, time.perf_counter() - t0, 120)


# 6 -------------------------------------------------------------------------------------

def test_criterion_6_rigid_vanishing(report):
    t0 = time.perf_counter()
    failures = []
    rep = rigid_cech_disc(q=1, twist=0, count=50, N=12, seed=SEED)
    bad = [c for c in rep.checks if not (c.split.readds and c.split.bounds_hold and c.coboundary_ok
                                         and c.twist_preserved)]
    if len(rep.checks) != 50 or bad:
        failures.append("%d of %d cocycles failed" % (len(bad), len(rep.checks)))
    for n in (1, 2):
        cx = PnCech(n, PROJ.field, 2, 8, 1)
        rng = random.Random(SEED + n)
        fails = 0
        for _ in range(100):
            p, x = cx.random_monomial_cochain(rng, terms=3)
            cx.validate(p, x)
            fails += not cx.homotopy_identity(p, x)
        if fails:
            failures.append("P%d homotopy: %d of 100" % (n, fails))
    report(6, "disc cover splitting and P^n homotopy", failures, time.perf_counter() - t0, 60)


# 7 -------------------------------------------------------------------------------------

def test_criterion_7_mod_rf_and_sandwich(report):
    t0 = time.perf_counter()
    failures = []
    count = 0
    for fname, mf in sorted(FILES.items()):
        for name in mf.models:
            M = mf.model(name)
            for i in range(relative_dimension(M) + 1):
                rep = cohomology_lattice(M, i)
                if not rep.certified:
                    continue
                count += 1
                label = "%s H^%d" % (name, i)
                if not rep.is_mod_rf():
                    failures.append("%s torsion %s" % (label, rep.torsion_exponents))
                if not compare_generic(rep, M, i):
                    failures.append("%s basis not K-independent" % label)
                if not sandwich_check(M, i, (2, 4), 1).passed:
                    failures.append("%s sandwich" % label)
    if count == 0:
        failures.append("no certified reports")
    report(7, "Mod_R^f and sandwich on %d certified reports" % count, failures, time.perf_counter() - t0, None)


# 8 -------------------------------------------------------------------------------------

def _bundled_ideals():
    out = []
    for fname, mf in sorted(FILES.items()):
        for name in mf.charts:
            ch = mf.chart(name)
            out.append(("%s" % name, ch.ideal))
            out.append(("%s + (t)" % name, ch.fiber_ideal()))
        for name in mf.models:
            M = mf.model(name)
            if M.ideal.gens:
                out.append((name, M.ideal))
            for c in range(len(M.charts)):
                ch = M.chart(c)
                if ch.ideal.gens:
                    out.append(("%s %s" % (name, M.chart_name(c)), ch.ideal))
                    out.append(("%s %s + (t)" % (name, M.chart_name(c)), ch.fiber_ideal()))
    return out


def _bundled_charts():
    out = [(n, mf.chart(n)) for mf in FILES.values() for n in mf.charts]
    for mf in FILES.values():
        for name in mf.models:
            M = mf.model(name)
            for c in range(len(M.charts)):
                if M.chart(c).ideal.gens:
                    out.append(("%s %s" % (name, M.chart_name(c)), M.chart(c)))
    return out


def _integrality_witnesses(data):
    """w^n + a_{n-1} w^(n-1) + ... + a_0 = 0 in the presentation of the normalization."""
    ring = data.ring
    for w, coeffs in data.equations.items():
        W = ring.var(w)
        acc = W ** len(coeffs)
        for i, a in enumerate(coeffs):
            acc = acc + data.image(a) * W ** i
        if data.ideal.reduce(acc):
            return False
        num, den = data.fractions[w]
        if data.ideal.reduce(data.image(num) - W * data.image(den)):
            return False
    return True


def test_criterion_8_algebra_oracles(report):
    t0 = time.perf_counter()
    failures = []
    ideals = _bundled_ideals()
    for label, I in ideals:
        rad = I.radical(verify=False)
        if not all(I.radical_membership(g) for g in rad.gens):
            failures.append("%s: radical too large" % label)
        if not all(rad.contains(g) for g in I.gens):
            failures.append("%s: I not inside its radical" % label)
        if not all(Ideal(rad.ring, rad.gens).radical_membership(g) == rad.contains(g) for g in
                   [rad.ring.var(v) for v in rad.ring.names]):
            failures.append("%s: radical output not radical" % label)
        base = I.groebner()
        rng = random.Random(SEED)
        for _ in range(20):
            gens = list(I.gens)
            rng.shuffle(gens)
            gens = [g * I.ring.dom(rng.choice([1, 2, 3, -1])) for g in gens]
            if Ideal(I.ring, gens).groebner() != base:
                failures.append("%s: Groebner basis depends on the generator order" % label)
                break
    charts = _bundled_charts()
    for label, ch in charts:
        data = normalize(ch)
        if not (data.verified and verify_normalization(data)):
            failures.append("%s: normalization re-verification" % label)
        if not _integrality_witnesses(data):
            failures.append("%s: integrality witness" % label)
        if verify_chart(data.as_chart()).generic_fiber_smooth is False:
            failures.append("%s: normalization generic fiber" % label)
    report(8, "radicals, normalizations, Groebner determinism on %d ideals / %d charts" % (len(ideals), len(charts)),
           failures, time.perf_counter() - t0, 120)
