"""Exact-arithmetic kernel: scalars, truncated base ring, z-rational
functions with factored denominators, Novikov series, t-polynomials."""

from .base import BaseElement
from .novikov import DegreeIndex, NovikovSeries
from .scalar import ONE, S, ZERO, Scalar
from .tpoly import TContext, TPolynomial, exp_linear
from .zrational import FactoredLinear, ZRationalFunction

__all__ = [
    "BaseElement",
    "DegreeIndex",
    "FactoredLinear",
    "NovikovSeries",
    "ONE",
    "S",
    "Scalar",
    "TContext",
    "TPolynomial",
    "ZERO",
    "ZRationalFunction",
    "exp_linear",
]
