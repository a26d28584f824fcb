"""Exact arithmetic: k, R = k[t]_(t), K = k((t)), polynomials, series, Newton polygons."""

from .field import BaseField, Fp, is_prime
from .scalar import INF, FunctionField, Scalar, tadic_valuation
