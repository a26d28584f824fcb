from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from galattice.arith import INF, BaseField, Scalar, tadic_valuation
from galattice.arith.field import is_prime
from galattice.arith.newton import newton_polygon
from galattice.arith.series import TruncatedSeries, truncate_series

Q = BaseField(0)
F5 = BaseField(5)


def S(num, den=(1,), k=Q):
    return Scalar(k, num, den)


t = S((0, 1))


# -- valuations -------------------------------------------------------------------

def test_valuation_examples():
    assert tadic_valuation(t ** 3) == 3
    assert tadic_valuation(S(())) == INF
    assert tadic_valuation(S((0, 0, 2, 0, 0, 1), (1, 1))) == 2


def test_valuation_of_inverse_is_negative():
    assert tadic_valuation(S((1,), (0, 0, 1))) == -2
    assert (S((1,), (0, 0, 1)) * t ** 2) == S((1,))


def test_canonical_form_gcd_reduced():
    a = S((1, 1), (1, 1))
    assert a == S((1,))
    assert a.den == (Q.one,)


def test_prime_field_arithmetic():
    assert not is_prime(1) and is_prime(7) and not is_prime(9)
    with pytest.raises(ValueError):
        BaseField(6)
    x = F5(3)
    assert x * 2 == F5(1)
    assert x / 3 == F5(1)


coeffs = st.lists(st.integers(-4, 4), min_size=1, max_size=4)


@st.composite
def scalars(draw, k=Q):
    num = draw(coeffs)
    den = draw(coeffs)
    if not den[0]:
        den[0] = 1
    shift = draw(st.integers(-2, 2))
    s = Scalar(k, num, den)
    return s * Scalar.t_power(k, shift)


@settings(max_examples=400, deadline=None)
@given(scalars(), scalars())
def test_valuation_axioms(a, b):
    va, vb = a.valuation(), b.valuation()
    assert (a * b).valuation() == va + vb
    vs = (a + b).valuation()
    assert vs >= min(va, vb)
    if va != vb:
        assert vs == min(va, vb)


@settings(max_examples=200, deadline=None)
@given(scalars(F5), scalars(F5))
def test_valuation_axioms_char_p(a, b):
    assert (a * b).valuation() == a.valuation() + b.valuation()
    if a.valuation() != b.valuation():
        assert (a + b).valuation() == min(a.valuation(), b.valuation())


# -- truncated series ---------------------------------------------------------------

def test_truncate_examples():
    g = truncate_series(S((1,), (1, -1)), 4)
    assert g.dense(4) == [1, 1, 1, 1] and g.prec == 4
    z = truncate_series(t ** 2, 2)
    assert z.is_zero() and z.prec == 2
    one = truncate_series(S((1, 1), (1, 1)), 3)
    assert one.dense(3) == [1, 0, 0] and one.prec == 3


def test_truncate_below_laurent_shift_fails():
    with pytest.raises(ValueError):
        truncate_series(S((1,), (0, 0, 0, 1)), -5)


def test_truncate_roundtrip_polynomial():
    a = S((3, 0, 2))
    s = truncate_series(a, 5)
    assert s.dense(5) == [3, 0, 2, 0, 0]


def test_precision_is_minimum():
    a = TruncatedSeries(Q, (1, 2), 0, 3)
    b = TruncatedSeries(Q, (1,), 0, 5)
    assert (a + b).prec == 3
    assert (a * b).prec == 3


@settings(max_examples=200, deadline=None)
@given(scalars(), scalars(), st.integers(1, 6))
def test_truncation_commutes_with_product(a, b, n):
    if a.valuation() < 0 or b.valuation() < 0:
        a = a * Scalar.t_power(Q, max(0, -a.valuation()))
        b = b * Scalar.t_power(Q, max(0, -b.valuation()))
    lhs = truncate_series(a * b, n)
    rhs = truncate_series(a, n) * truncate_series(b, n)
    assert lhs.agrees_with(rhs, n)


# -- Newton polygons -----------------------------------------------------------------

def test_newton_examples():
    npg = newton_polygon([-t, S(()), S((1,))])
    assert npg.root_valuations() == [(Fraction(1, 2), 2)]
    assert list(npg.vertices) == [(0, 1), (2, 0)]
    npg = newton_polygon([S(()), -t, S((1,))])
    assert sorted(npg.root_valuations(), key=lambda p: (p[0] == INF, p[0])) == [(1, 1), (INF, 1)]


def _newton_root(coeffs, start, prec):
    """Newton iteration z <- z - f(z)/f'(z) on truncated series."""
    z = start
    for _ in range(prec + 2):
        f = TruncatedSeries.zero(Q, prec)
        df = TruncatedSeries.zero(Q, prec)
        for i, c in enumerate(coeffs):
            cs = truncate_series(c, prec)
            f = f + cs * z ** i
            if i:
                df = df + cs * z ** (i - 1) * i
        z = z - f / df
    return z


def test_newton_third_example_matches_series_roots():
    coeffs = [t ** 3, -t, S((1,))]           # z^2 - t z + t^3
    npg = newton_polygon(coeffs)
    vals = sorted(v for v, n in npg.root_valuations() for _ in range(n))
    assert vals == [1, 2]
    r1 = _newton_root(coeffs, TruncatedSeries(Q, (1,), 1, 6), 6)        # near t
    r2 = _newton_root(coeffs, TruncatedSeries(Q, (1,), 2, 6), 6)        # near t^2
    assert sorted([r1.valuation(), r2.valuation()]) == [1, 2]


def test_newton_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        newton_polygon([S(()), S(())])


polys = st.lists(scalars(), min_size=2, max_size=6).filter(lambda c: c[-1] and any(c))


def _mul(f, g):
    out = [S(())] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = out[i + j] + a * b
    return out


@settings(max_examples=150, deadline=None)
@given(polys, polys)
def test_newton_product_concatenates_slopes(f, g):
    a, b, ab = newton_polygon(f), newton_polygon(g), newton_polygon(_mul(f, g))
    assert ab.slopes_multiset() == sorted(a.slopes_multiset() + b.slopes_multiset())
    assert ab.zero_order == a.zero_order + b.zero_order
    slopes = [s for s, _ in ab.segments]
    assert slopes == sorted(set(slopes))
    assert ab.length() == len(_mul(f, g)) - 1 - ab.zero_order


# -- algebraic extensions ----------------------------------------------------------

from galattice.arith.extension import ExtensionField  # noqa: E402

GAUSS = ExtensionField(Q, (1, 0, 1))             # a^2 + 1
F7_SQRT3 = ExtensionField(BaseField(7), (-3, 0, 1))


def test_extension_basics():
    a = GAUSS.gen
    assert a * a == -1
    assert (1 + a) * (1 - a) == 2
    assert GAUSS.to_str(1 + a) == "(a + 1)"
    assert len(F7_SQRT3.elements()) == 49
    assert F7_SQRT3.gen ** 2 == 3


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2),
       st.lists(st.integers(-5, 5), min_size=2, max_size=2))
def test_extension_field_axioms(u, v):
    for F in (GAUSS, F7_SQRT3):
        x = F(0) + F.gen * u[1] + u[0]
        y = F(0) + F.gen * v[1] + v[0]
        if x:
            assert x * (1 / x) == 1
            assert (y / x) * x == y
        assert x * (x + y) == x * x + x * y
