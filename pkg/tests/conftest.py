import pytest

from galattice.arith import BaseField
from galattice.arith.poly import PolyRing
from galattice.arith.parse import parse_poly
from galattice.arith.scalar import Scalar


@pytest.fixture
def Q():
    return BaseField(0)


def scalar(k, num, den=(1,)):
    return Scalar(k, num, den)


def poly(text, names, k=None):
    k = k or BaseField(0)
    return parse_poly(text, PolyRing(list(names), k))
