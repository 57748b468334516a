"""Exceptions shared across the library."""

from __future__ import annotations


class ToricGWError(Exception):
    """Base class for all library errors."""


class SpecValidationError(ToricGWError):
    """The input geometry violates a structural requirement."""


class NonRegularChamberError(SpecValidationError):
    """The chamber point lies on the boundary of a candidate cone."""


class SingularFixedPointError(SpecValidationError):
    """An admitted cone has |det| > 1 (orbifold case, unsupported)."""


class NoLimitError(ToricGWError):
    """A scalar has no value at s = 0 (denominator vanishes there)."""


class NotInvertibleError(ToricGWError):
    """A ring element with vanishing scalar part cannot be inverted."""


class NonSimplePoleError(ToricGWError):
    """A residue was requested at a pole of multiplicity > 1."""


class PoleAtNilpotentError(ToricGWError):
    """Evaluation or residue location differs from a denominator factor
    only by a nilpotent; the lambda-line is too special."""


class ZeroFactorError(ToricGWError):
    """A Gamma-ratio product with U = 0 and negative exponent would put
    the factor 0*z in a denominator; callers treat the term as zero."""


class GeometryParseError(ToricGWError):
    """A geometry input file could not be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
