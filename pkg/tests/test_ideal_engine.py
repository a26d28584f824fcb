import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galattice.arith import BaseField
from galattice.arith.parse import parse_poly
from galattice.arith.poly import PolyRing
from galattice.ideals.groebner import leading
from galattice.ideals import LEX, Ideal, MonomialOrder, RadicalRefusal, squarefree_part

Q = BaseField(0)


def ring(names, k=Q):
    return PolyRing(list(names), k)


def I(r, *texts):
    return Ideal(r, [parse_poly(s, r) for s in texts])


def P(r, text):
    return parse_poly(text, r)


R2 = ring("xy")
R3 = ring("xyz")
Rt = ring(["t", "x", "y"])


# -- Groebner bases -------------------------------------------------------------------

def test_gb_trivial_and_zero():
    assert [g.to_str() for g in I(R2, "x", "y").groebner(LEX)] == ["x", "y"]
    assert Ideal(R2, []).groebner(LEX) == []
    assert Ideal(R2, [R2.zero()]).groebner() == []


def test_gb_lex_example():
    J = I(R2, "x^2 - 1", "x*y - 1")
    gb = J.groebner(LEX)
    assert sorted(g.to_str() for g in gb) == sorted([P(R2, "x - y").to_str(), P(R2, "y^2 - 1").to_str()])
    # oracle: mutual reduction to zero
    G = Ideal(R2, gb)
    for g in J.gens:
        assert not G.reduce(g, LEX)
    for g in gb:
        assert not J.reduce(g, LEX)


def test_gb_is_reduced():
    J = I(R3, "x^2 + y*z - 2", "x*y - z^2", "y^3 - x*z + 1")
    for order in (LEX, MonomialOrder.grevlex(), MonomialOrder.elimination(1)):
        gb = J.groebner(order)
        leads = [leading(g.terms, order) for g in gb]
        for g, lm in zip(gb, leads):
            assert g.terms[lm] == Q.one
            for e in g.terms:
                assert not any(m != lm and all(a >= b for a, b in zip(e, m)) for m in leads)


def test_gb_determinism_permutations():
    gens = [P(R3, s) for s in ("x^2 + y*z - 2", "x*y - z^2", "y^3 - x*z + 1", "x + y + z")]
    ref = Ideal(R3, gens).groebner()
    rng = random.Random(7)
    for _ in range(10):
        perm = gens[:]
        rng.shuffle(perm)
        perm = [g * Q(rng.randint(1, 5)) for g in perm]
        assert Ideal(R3, perm).groebner() == ref


# -- membership ---------------------------------------------------------------------

def test_membership_examples():
    assert I(R2, "x").contains(P(R2, "x^2"))
    assert I(R2, "x", "x - 1").contains(R2.one())
    J = I(R2, "y - x", "x^2 - x")
    f = P(R2, "y^2 - x^3")
    assert J.contains(f)
    # oracle: f vanishes on V(J) = {(0,0), (1,1)}
    for pt in ({"x": Q(0), "y": Q(0)}, {"x": Q(1), "y": Q(1)}):
        assert f.evaluate(pt) == 0
    assert not J.contains(P(R2, "y"))


def test_membership_ring_mismatch():
    with pytest.raises(ValueError):
        I(R2, "x").contains(P(R3, "x"))


# -- elimination, saturation --------------------------------------------------------

def test_eliminate_examples():
    J = I(R3, "y - x^2", "z - x^3").eliminate(["x"])
    assert J.contains(P(R3, "z^2 - y^3"))
    assert all("x" not in g.variables() for g in J.gens)
    assert I(R2, "x").eliminate(["y"]) == I(R2, "x")
    assert I(R2, "x").eliminate(["x"]).is_zero()


def _iterated_quotient(J, f):
    while True:
        nxt = J.quotient(Ideal(J.ring, [f]))
        if nxt == J:
            return J
        J = nxt


def test_saturate_examples():
    J = I(R2, "x^2*y")
    y = R2.var("y")
    assert J.saturate(y) == I(R2, "x^2")
    assert _iterated_quotient(J, y) == I(R2, "x^2")
    t = Rt.var("t")
    assert I(Rt, "x").saturate(t) == I(Rt, "x")
    assert I(Rt, "t*x").saturate(t) == I(Rt, "x")
    with pytest.raises(ValueError):
        J.saturate(R2.zero())


def test_intersect_and_quotient():
    a, b = I(R2, "x"), I(R2, "y")
    assert a.intersect(b) == I(R2, "x*y")
    assert I(R2, "x*y").quotient(b) == a


# -- radicals --------------------------------------------------------------------

def test_radical_examples():
    assert I(R2, "x^2").radical() == I(R2, "x")
    assert I(R2, "x^2*y^3").radical() == I(R2, "x*y")
    J = I(R2, "x^2", "x*y")
    rad = J.radical()
    assert rad == I(R2, "x")
    assert J.radical_membership(P(R2, "x"))
    assert all(I(R2, "x").contains(g) for g in J.gens)


def test_radical_zero_dimensional():
    J = I(R2, "x^2 - 2*x + 1", "y^2")
    assert J.radical() == I(R2, "x - 1", "y")


def test_radical_membership_examples():
    assert I(R2, "x^2").radical_membership(P(R2, "x"))
    assert not I(R2, "x^2").radical_membership(P(R2, "y"))
    assert I(Rt, "t^2").radical_membership(Rt.var("t"))


def test_radical_refuses_small_characteristic():
    r = ring("xyz", BaseField(2))
    with pytest.raises(RadicalRefusal):
        I(r, "x^2 - y", "z").radical()


def test_radical_principal_char_p():
    r = ring("xy", BaseField(5))
    assert I(r, "x^5*y^2").radical() == I(r, "x*y")


def test_squarefree_part():
    assert squarefree_part(P(R2, "x^3*(x + y)^2")) == P(R2, "x^2 + x*y")


# -- properties ------------------------------------------------------------------

MONOS = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2), (3, 0), (1, 2)]


@st.composite
def polys(draw, max_terms=3):
    n = draw(st.integers(1, max_terms))
    terms = [(draw(st.sampled_from(MONOS)), draw(st.integers(-3, 3))) for _ in range(n)]
    return R2.from_terms(terms)


ideals = st.lists(polys(), min_size=1, max_size=2).map(lambda gs: Ideal(R2, gs))


@settings(max_examples=100, deadline=None)
@given(polys(), polys(), ideals)
def test_membership_closed_under_multiples(f, g, J):
    if J.gens:
        assert J.contains(f * J.gens[0])
    if J.contains(f):
        assert J.contains(f * g)


@settings(max_examples=100, deadline=None)
@given(polys(), ideals)
def test_radical_membership_matches_powers(f, J):
    brute = any(J.contains(f ** e) for e in range(1, 9))
    if brute:
        assert J.radical_membership(f)
    if not J.radical_membership(f):
        assert not brute


@settings(max_examples=60, deadline=None)
@given(polys(), ideals)
def test_saturation_idempotent_and_monotone(f, J):
    if not f:
        return
    S = J.saturate(f)
    assert J.issubset(S)
    assert S.saturate(f) == S


@settings(max_examples=60, deadline=None)
@given(ideals)
def test_radical_output_properties(J):
    rad = J.radical()
    assert J.issubset(rad)
    assert all(J.radical_membership(g) for g in rad.gens)
    assert rad.radical() == rad


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(), min_size=1, max_size=3), st.randoms(use_true_random=False))
def test_gb_permutation_invariant(gens, rng):
    perm = gens[:]
    rng.shuffle(perm)
    assert Ideal(R2, gens).groebner() == Ideal(R2, perm).groebner()
