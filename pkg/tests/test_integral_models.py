import random
from fractions import Fraction

import pytest

from galattice.arith import BaseField
from galattice.arith.parse import parse_poly
from galattice.arith.poly import PolyRing
from galattice.cli import parse_model_file
from galattice.cli.selftest import bundled_files
from galattice.ideals import Ideal
from galattice.models import (Chart, PreconditionError, ga_membership, ga_sections, normalize,
                              place_witness_search, verify_chart, verify_normalization)

Q = BaseField(0)
CHARTS = parse_model_file(bundled_files()["charts.gal"])
NORMAL_CURVES = ["ramified", "node", "conic", "plane"]


def chart(names, *eqs, k=Q):
    r = PolyRing(list(names), k)
    return Chart.from_polys(r, [parse_poly(e, r) for e in eqs])


def P(c, text):
    return parse_poly(text, c.ring)


# -- verify_chart ---------------------------------------------------------------------

def test_verify_chart_examples():
    d = verify_chart(chart("tx", "x^2 - t"))
    assert d.t_torsion_free and d.generic_fiber_smooth
    assert not verify_chart(chart("tx", "t*x")).t_torsion_free
    d = verify_chart(chart("tx"))
    assert d.t_torsion_free and d.generic_fiber_smooth and d.regular


def test_verify_chart_char_two_ramified_not_smooth():
    d = verify_chart(chart("tx", "x^2 - t", k=BaseField(2)))
    assert d.t_torsion_free and d.generic_fiber_smooth is False


def test_chart_without_t_rejected():
    with pytest.raises(PreconditionError):
        Chart(Ideal(PolyRing(["x"], Q), []))


def test_torsion_chart_refused_by_sections():
    with pytest.raises(PreconditionError):
        ga_sections(chart("tx", "t*x"), 0)


# -- normalization ------------------------------------------------------------------

def test_normalize_cusp():
    nd = normalize(CHARTS.chart("cusp"))
    assert nd.generator_strings() == ["1", "y/x"]
    (w,) = nd.equations
    # recorded monic equation w^2 + c1 w + c0 = 0 with c1 = 0, c0 = -x
    assert [c.to_str() for c in nd.equations[w]] == ["-x", "0"]
    num, den = nd.fractions[w]
    I0 = CHARTS.chart("cusp").ideal
    assert I0.contains(num * num - P(CHARTS.chart("cusp"), "x") * den * den)
    assert nd.verified and verify_normalization(nd)


def test_normalize_nodal_cubic():
    c = chart("txy", "y^2 - x^2*(x + 1)")
    nd = normalize(c)
    assert nd.generator_strings() == ["1", "y/x"]
    (w,) = nd.equations
    assert [e.to_str() for e in nd.equations[w]] == ["-x - 1", "0"]
    num, den = nd.fractions[w]
    assert c.ideal.contains(num * num - P(c, "x + 1") * den * den)
    assert verify_normalization(nd)


def test_normalize_normal_ring_is_trivial():
    for name in ("plane", "node", "ramified", "conic"):
        assert normalize(CHARTS.chart(name)).generator_strings() == ["1"]


@pytest.mark.parametrize("eqs", [("y^2 - x^3",), ("y^2 - x^2*(x + 1)",), ("y^2 - x^5",)])
def test_normalization_idempotent(eqs):
    nd = normalize(chart("txy", *eqs))
    again = normalize(nd.as_chart())
    assert again.generator_strings() == ["1"]


# -- sections of G_a(r) ---------------------------------------------------------------

def test_ga_sections_examples():
    assert ga_sections(chart("tx"), 0).shifted_generators() == ["t"]
    assert ga_sections(chart("tx", "x^2 - t"), 0).shifted_generators() == ["x"]
    assert ga_sections(chart("tx"), 1).shifted_generators() == ["t^2"]
    assert ga_sections(chart("tx"), -1).shifted_generators() == ["1"]
    assert ga_sections(chart("tx", "x^2 - t"), -2).shifted_generators() == ["x/t^2"]


def test_ga_sections_integer_twists_only():
    with pytest.raises(PreconditionError):
        ga_sections(chart("tx"), Fraction(1, 2))


def test_ga_membership_examples():
    c = chart("tx", "x^2 - t")
    cert = ga_membership(P(c, "x"), c, 0)
    assert cert.member and cert.route == "rabinowitsch" and cert.exponent == 2
    for name in NORMAL_CURVES:
        ch = CHARTS.chart(name)
        assert ga_membership(ch.t, ch, 0).member
        assert not ga_membership(ch.ring.one(), ch, 0).member


def test_ga_membership_fractional_twists():
    c = chart("tx", "x^2 - t")
    x = P(c, "x")
    assert ga_membership(x, c, Fraction(1, 3)).member        # v(x) = 1/2 > 1/3
    assert not ga_membership(x, c, Fraction(1, 2)).member    # v(x) = 1/2
    assert not ga_membership(x, c, Fraction(2, 3)).member
    assert ga_membership(x, c, Fraction(-2, 3), t_power=1).member   # x/t has v = -1/2
    assert not ga_membership(x, c, Fraction(-1, 2), t_power=1).member


def test_ga_membership_not_integral_route():
    c = chart("tx")
    cert = ga_membership(P(c, "x"), c, 1)
    assert not cert.member and cert.route == "not-integral"


# -- witness search ----------------------------------------------------------------

def test_witness_examples():
    line = chart("tx")
    w = place_witness_search(P(line, "x"), line, 0)
    assert w is not None and w.value == 0 and w.as_dict()["point"] == {"x": "1"}
    ram = chart("tx", "x^2 - t")
    assert place_witness_search(P(ram, "x"), ram, 0, e_max=6) is None
    for c in (line, ram):
        w = place_witness_search(c.ring.one(), c, 0)
        assert w is not None and w.value == 0


def test_witness_uses_extension_when_needed():
    conic = CHARTS.chart("conic")
    w = place_witness_search(P(conic, "x"), conic, 0)
    assert w is not None and w.value <= 0
    assert "a^2 + 1" in w.as_dict()["field"]


def test_witness_value_below_fractional_twist():
    c = chart("tx", "x^2 - t")
    w = place_witness_search(P(c, "x"), c, Fraction(1, 2))
    assert w is not None and w.e == 2 and w.value == Fraction(1, 2)


def _random_element(rng, ring):
    while True:
        terms = [(tuple(rng.randint(0, 2) for _ in ring.names), rng.randint(-2, 2))
                 for _ in range(rng.randint(1, 3))]
        a = ring.from_terms(terms)
        if a:
            return a


@pytest.mark.parametrize("name", NORMAL_CURVES)
def test_three_way_consistency(name):
    c = CHARTS.chart(name)
    rng = random.Random(hash(name) % 1000)
    for _ in range(50):
        a = _random_element(rng, c.ring)
        member = ga_membership(a, c, 0).member
        witness = place_witness_search(a, c, 0, e_max=6)
        assert member == (witness is None), (a, member, witness and witness.as_dict())


# -- shift, sandwich, localization -------------------------------------------------------

def _sections(G):
    """Sections of G as pairs (p, k) meaning p / t^k with p in the normalization."""
    t = G.norm.ring.var("t")
    return [(g * t ** max(G.twist, 0), max(-G.twist, 0)) for g in G.generators]


def _times_t(sec, t):
    p, k = sec
    return (p, k - 1) if k else (p * t, 0)


@pytest.mark.parametrize("name", NORMAL_CURVES)
@pytest.mark.parametrize("r", [-1, 0, 1, 2])
def test_shift_isomorphism(name, r):
    c = CHARTS.chart(name)
    G, H = ga_sections(c, r), ga_sections(c, r + 1)
    t = G.norm.ring.var("t")
    for sec in _sections(G):
        assert H.contains(*_times_t(sec, t))
    for p, k in _sections(H):
        assert G.contains(p, k + 1)


@pytest.mark.parametrize("name", NORMAL_CURVES)
def test_sandwich(name):
    c = CHARTS.chart(name)
    G = ga_sections(c, 0)
    ring = G.norm.ring
    assert G.contains(ring.var("t"))                       # t B inside G_a(0)
    assert not G.contains(ring.one())                      # G_a(0) proper in B
    B = G.norm.ideal
    for g in G.generators:
        assert (B + [ring.var("t")]).radical_membership(g)
        assert G.contains(g * ring.var("x"))


@pytest.mark.parametrize("name,f", [("node", "x"), ("node", "x + 1"), ("conic", "x"),
                                    ("plane", "x*y + 1"), ("ramified", "x + 1")])
def test_localization_compatible(name, f):
    c = CHARTS.chart(name)
    cf = c.localize(P(c, f))
    G, Gf = ga_sections(c, 0), ga_sections(cf, 0)
    nf = Gf.norm
    images = Ideal(nf.ring, [nf.image(g.to_ring(cf.ring)) for g in G.generators]) + nf.ideal
    assert images == Gf.fiber_radical + nf.ideal
