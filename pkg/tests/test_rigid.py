import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galattice.arith.field import BaseField
from galattice.arith.scalar import INF
from galattice.arith.series import TruncatedSeries
from galattice.lattice.truncated import k_rank
from galattice.rigid.cover import check_cocycle, rigid_cech_disc
from galattice.rigid.pn import PnCech, WindowError, cochain_str, pn_cech_homotopy
from galattice.rigid.tate import (
    DomainError, PolydiscDomain, TateChunk, annulus, circle, cousin_solve, disc,
    gauss_valuation, random_chunk, sup_valuation, vq_membership,
)

Q = BaseField(0)
F5 = BaseField(5)


def tz(coeffs, k=Q, prec=None):
    """Univariate chunk; coefficients are {exponent: {t-power: c}}."""
    terms = {}
    for j, cs in coeffs.items():
        lo = min(cs)
        dense = [cs.get(i, 0) for i in range(lo, max(cs) + 1)]
        terms[(j,)] = TruncatedSeries(k, [k(c) for c in dense], lo, prec)
    return TateChunk(k, 1, terms, prec)


def sup_oracle(f, q1, q2, steps=24):
    # minimum over a grid of radii of the dominant term valuation
    best = None
    for i in range(steps + 1):
        r = Fraction(q1) + (Fraction(q2) - Fraction(q1)) * i / steps
        v = min(c.valuation() + e[0] * r for e, c in f.terms.items())
        best = v if best is None else min(best, v)
    return best


# -- valuations --------------------------------------------------------------

def test_gauss_examples():
    two = TateChunk(Q, 2, {(1, 0): TruncatedSeries(Q, [Q(1)], 1), (0, 0): TruncatedSeries(Q, [Q(1)], 3)})
    assert gauss_valuation(two) == 1
    assert gauss_valuation(tz({0: {0: 1}})) == 0
    assert gauss_valuation(tz({0: {2: 1}, 2: {1: 1}})) == 1
    assert gauss_valuation(TateChunk.zero(Q)) == INF
    with pytest.raises(DomainError):
        gauss_valuation(tz({-1: {0: 1}}))


def test_sup_examples_on_annulus():
    A = PolydiscDomain([annulus(0, 1)])
    assert sup_valuation(tz({-1: {0: 1}}), A) == -1
    assert sup_valuation(tz({1: {0: 1}}), A) == 0
    assert sup_valuation(tz({-1: {1: 1}}), A) == 0
    with pytest.raises(DomainError):
        sup_valuation(tz({-1: {0: 1}}), PolydiscDomain([disc(0)]))
    with pytest.raises(ValueError):
        annulus(1, 0)


def test_sup_on_products():
    dom = PolydiscDomain([disc(0), annulus(Fraction(1, 2), 2)])
    f = TateChunk(Q, 2, {(2, -1): TruncatedSeries(Q, [Q(1)], 1), (0, 1): TruncatedSeries(Q, [Q(3)], 0)})
    # t*z1^2*z2^-1 -> 1 + 0 - 2; 3*z2 -> 0 + 1/2
    assert sup_valuation(f, dom) == -1


def test_sup_matches_grid_oracle():
    rng = random.Random(3)
    for _ in range(40):
        f = random_chunk(Q, rng, 10)
        if not f:
            continue
        q2 = Fraction(rng.randint(0, 6), rng.randint(1, 3))
        assert sup_valuation(f, PolydiscDomain([annulus(0, q2)])) == sup_oracle(f, 0, q2)


def test_vq_examples():
    B = PolydiscDomain.unit(1)
    t = tz({0: {1: 1}})
    assert vq_membership(t, B, 0)
    assert not vq_membership(t, B, 1)
    assert not vq_membership(tz({1: {0: 1}}), B, 0)


def test_substitute_center():
    f = tz({2: {0: 1}})
    g = f.substitute_center(0, 1)
    assert g.equals(tz({2: {0: 1}, 1: {0: 2}, 0: {0: 1}}))
    assert gauss_valuation(g) == gauss_valuation(f)
    with pytest.raises(DomainError):
        tz({-1: {0: 1}}).substitute_center(0, 1)


def test_gauss_multiplicative_on_exact_pairs():
    rng = random.Random(11)
    for k in (Q, F5):
        for _ in range(500):
            f, g = (_exact_disc_chunk(k, rng) for _ in range(2))
            assert gauss_valuation(f * g) == gauss_valuation(f) + gauss_valuation(g)


def _exact_disc_chunk(k, rng, nvars=2):
    terms = {}
    for _ in range(rng.randint(1, 4)):
        e = tuple(rng.randint(0, 3) for _ in range(nvars))
        coeffs = [k.random_element(rng) for _ in range(rng.randint(1, 3))]
        coeffs[0] = coeffs[0] or k.one
        terms[e] = TruncatedSeries(k, coeffs, rng.randint(0, 4), None)
    return TateChunk(k, nvars, terms)


laurent = st.dictionaries(st.integers(-4, 4), st.tuples(st.integers(0, 7), st.integers(-5, 5).filter(bool)),
                          max_size=5)
radii = st.fractions(min_value=0, max_value=4, max_denominator=4)


def _chunk(d, prec=10):
    return tz({j: {v: c} for j, (v, c) in d.items()}, prec=prec)


@settings(max_examples=150, deadline=None)
@given(laurent, radii, radii, st.fractions(min_value=-3, max_value=5, max_denominator=6))
def test_twist_shift(d, a, b, q):
    f = _chunk(d)
    dom = PolydiscDomain([annulus(min(a, b), max(a, b))])
    assert vq_membership(f.times_t(1), dom, q + 1) == vq_membership(f, dom, q)


@settings(max_examples=100, deadline=None)
@given(laurent, radii, st.fractions(min_value=-3, max_value=5, max_denominator=6))
def test_vq_monotone(d, q2, q):
    f = _chunk(d)
    dom = PolydiscDomain([annulus(0, q2)])
    if vq_membership(f, dom, q):
        assert vq_membership(f, dom, q - Fraction(1, 3))


# -- Cousin splitting ----------------------------------------------------------

def test_cousin_examples():
    f = tz({1: {0: 1}, 0: {0: 1}, -1: {1: 1}})
    sp = cousin_solve(f, 0)
    assert sp.f_plus.equals(tz({1: {0: 1}, 0: {0: 1}}))
    assert sp.f_minus.equals(tz({-1: {1: 1}}))
    assert sp.readds and sp.bounds_hold

    sp = cousin_solve(TateChunk.zero(Q), 0)
    assert not sp.f_plus and not sp.f_minus and sp.readds

    sp = cousin_solve(tz({-2: {0: 1}}), 1)
    assert not sp.f_plus
    assert sp.circle_valuation == -2 and sp.minus_valuation == -2
    assert sp.bounds_hold


@settings(max_examples=200, deadline=None)
@given(laurent, radii)
def test_cousin_exactness(d, q):
    f = _chunk(d)
    sp = cousin_solve(f, q)
    assert sp.readds and sp.bounds_hold
    assert all(e[0] >= 0 for e in sp.f_plus.terms)
    assert all(e[0] < 0 for e in sp.f_minus.terms)


# -- the two-piece disc cover --------------------------------------------------

def test_rigid_cech_example_direct_oracle():
    f = tz({-1: {1: 1}, 0: {2: 1}})
    chk = check_cocycle(f, 1, 0)
    assert chk.coboundary_ok and chk.split.readds and chk.split.bounds_hold
    # computed directly: t*z^-1 has valuation 1 - 1 = 0 on the circle v(z) = 1
    assert sup_oracle(f, 1, 1) == 0 == chk.split.circle_valuation
    assert not chk.in_twist
    assert sup_oracle(chk.g_annulus, 0, 1) == 0 == chk.split.minus_valuation
    assert chk.split.plus_valuation == 2


def test_rigid_cech_twisted_variant():
    f = tz({-1: {2: 1}, 0: {2: 1}})
    chk = check_cocycle(f, 1, 0)
    assert chk.in_twist and chk.twist_preserved and chk.ok
    assert sup_oracle(chk.g_annulus, 0, 1) == 1
    assert sup_valuation(chk.g_disc, PolydiscDomain([disc(1)])) == 2


def test_rigid_cech_zero():
    rep = rigid_cech_disc(1, 0, cocycles=[TateChunk.zero(Q)])
    assert rep.all_split
    assert not rep.checks[0].g_disc and not rep.checks[0].g_annulus


def test_rigid_cech_random():
    rep = rigid_cech_disc(1, 0, count=50, N=12, seed=0)
    assert len(rep.checks) == 50 and rep.failures == 0 and rep.all_split
    for c in rep.checks:
        assert c.in_twist or not c.split.f
        assert sup_oracle(c.g_annulus, 0, 1) > 0 if c.g_annulus else True
    again = rigid_cech_disc(1, 0, count=50, N=12, seed=0)
    assert [str(c.split.f) for c in again.checks] == [str(c.split.f) for c in rep.checks]


def test_rigid_cech_fractional_and_f5():
    rep = rigid_cech_disc(Fraction(3, 2), Fraction(1, 2), k=F5, count=30, N=10, seed=4)
    assert rep.all_split


# -- P^n contraction -------------------------------------------------------------

def _mono(k, e, nu, N, simplex):
    return {simplex: {e: TruncatedSeries(k, (k.one,), nu, N)}}


def _in_image_of_d(cx, x, p):
    def vec(y):
        return {(s, e, c.valuation()): c.leading() for s, row in y.items() for e, c in row.items()}
    images = [vec(cx.d({s: {e: TruncatedSeries(cx.k, (cx.k.one,), nu, cx.N)}}))
              for s, e, nu in cx.basis(p - 1, reduced=True)]
    return k_rank(images, cx.k) == k_rank(images + [vec(x)], cx.k)


def test_t0_over_t1():
    cx = PnCech(1, Q, 2, 4)
    x = _mono(Q, (1, -1), 1, 4, (0, 1))
    assert _in_image_of_d(cx, x, 1)
    hx = cx.h(x)
    assert list(hx) == [(1,)]
    assert cx.equal(cx.d(hx), x)
    res = pn_cech_homotopy(1, x, 1, window=2, N=4)
    assert res.identity_holds
    assert cochain_str(res.h) == {"C(1)": "t*T0*T1^-1"}


def test_scalar_zero_cochain():
    cx = PnCech(1, Q, 2, 4)
    x = {(0,): {(0, 0): TruncatedSeries(Q, (Q(3),), 2, 4)}, (1,): {(0, 0): TruncatedSeries(Q, (Q(3),), 2, 4)}}
    assert cx.reduce(x) == {}
    assert not cx.reduce(cx.d(x))
    res = pn_cech_homotopy(1, x, 0, window=2, N=4)
    assert res.identity_holds and res.scalar_part == x


def test_h0_window_at_n8():
    cx = PnCech(1, Q, 2, 8, Fraction(1))
    assert cx.cohomology_dims() == {0: 6, 1: 0}
    assert cx.h0_scalars() == [2, 3, 4, 5, 6, 7]
    assert cx.cohomology_dims(reduced=True) == {0: 0, 1: 0}


def test_p2_reduced_acyclic():
    cx = PnCech(2, F5, 1, 3, Fraction(0))
    assert cx.cohomology_dims(reduced=True) == {0: 0, 1: 0, 2: 0}
    assert cx.cohomology_dims() == {0: 2, 1: 0, 2: 0}


def test_window_errors():
    cx = PnCech(1, Q, 2, 6, Fraction(1))
    one = TruncatedSeries(Q, (Q.one,), 3, 6)
    with pytest.raises(WindowError):
        cx.validate(1, {(0, 1): {(3, -3): one}})
    with pytest.raises(WindowError):
        cx.validate(0, {(0,): {(1, -1): one}})  # T1 not invertible on chart 0
    with pytest.raises(WindowError):
        cx.validate(0, {(0,): {(-1, 1): TruncatedSeries(Q, (Q.one,), 1, 6)}})
    with pytest.raises(WindowError):
        cx.validate(1, {(0,): {(0, 0): one}})
    with pytest.raises(WindowError):
        pn_cech_homotopy(1, {(0, 1): {(1, 0): one}}, 1, window=2, N=6)


@pytest.mark.parametrize("n", [1, 2])
def test_homotopy_random(n):
    cx = PnCech(n, Q, 2, 6, Fraction(1))
    rng = random.Random(n)
    for _ in range(100):
        p, x = cx.random_monomial_cochain(rng, terms=3)
        cx.validate(p, x)
        assert cx.homotopy_identity(p, x)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.integers(0, 10 ** 6))
def test_homotopy_property(n, seed):
    cx = PnCech(n, F5, 2, 5)
    p, x = cx.random_monomial_cochain(random.Random(seed), terms=4)
    assert cx.homotopy_identity(p, x)
