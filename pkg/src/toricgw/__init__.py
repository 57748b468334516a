"""toricgw: exact equivariant hypergeometric series for toric fibrations.

The library constructs the fixed-point restrictions of hypergeometric
series on smooth compact toric manifolds and projective-space
fibrations, verifies the residue recursion that characterizes their
genus-0 invariants, and derives push-forwards, Stirling-type
asymptotics, quantum cup-products and mirror maps.  All arithmetic is
exact (rational functions over Q); there is no floating point anywhere.
"""

from .algebra import (
    BaseElement,
    DegreeIndex,
    NovikovSeries,
    Scalar,
    TContext,
    TPolynomial,
    ZRationalFunction,
)
from .toric import Edge, FixedPoint, ToricFibrationSpec, Weight

__all__ = [
    "BaseElement",
    "DegreeIndex",
    "Edge",
    "FixedPoint",
    "NovikovSeries",
    "Scalar",
    "TContext",
    "TPolynomial",
    "ToricFibrationSpec",
    "Weight",
    "ZRationalFunction",
]
