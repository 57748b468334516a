"""Truncated formal series over the degree lattice.

A DegreeIndex is a fiber degree vector d (paired against the classes
P_1..P_K) together with a nonnegative base degree D.  The weighted
degree of (d, D) is omega.d + D where omega is the chamber point; a
NovikovSeries keeps only indices of weighted degree <= cutoff and
re-truncates on every product.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True, order=True)
class DegreeIndex:
    d: tuple
    D: int = 0

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))

    def weighted(self, omega) -> Fraction:
        return sum((Fraction(w) * x for w, x in zip(omega, self.d)), Fraction(self.D))

    def shift(self, dvec, kD: int = 0) -> "DegreeIndex":
        return DegreeIndex(tuple(a + b for a, b in zip(self.d, dvec)), self.D + kD)

    def __str__(self):
        if self.D:
            return "q^%s Q^%d" % (list(self.d), self.D)
        return "q^%s" % (list(self.d),)


class NovikovSeries:
    """Map DegreeIndex -> coefficient, truncated at a weighted-degree cutoff.

    Coefficient values only need +, * and is_zero(); the container is
    agnostic about whether they are z-rational functions, truncated
    t-polynomials of those, or plain numbers.
    """

    __slots__ = ("omega", "cutoff", "terms")

    def __init__(self, omega, cutoff, terms=None):
        self.omega = tuple(Fraction(x) for x in omega)
        self.cutoff = Fraction(cutoff)
        self.terms = {}
        if terms:
            for idx, val in terms.items():
                if idx.weighted(self.omega) <= self.cutoff and not _is_zero(val):
                    self.terms[idx] = val

    def weight(self, idx: DegreeIndex) -> Fraction:
        return idx.weighted(self.omega)

    def in_window(self, idx: DegreeIndex) -> bool:
        return idx.weighted(self.omega) <= self.cutoff

    def get(self, idx: DegreeIndex):
        return self.terms.get(idx)

    def support(self):
        return sorted(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "NovikovSeries") -> "NovikovSeries":
        if self.omega != other.omega:
            raise ValueError("mismatched chamber weights")
        cutoff = min(self.cutoff, other.cutoff)
        out = dict(self.terms)
        for idx, val in other.terms.items():
            out[idx] = out[idx] + val if idx in out else val
        return NovikovSeries(self.omega, cutoff, out)

    def __mul__(self, other: "NovikovSeries") -> "NovikovSeries":
        if self.omega != other.omega:
            raise ValueError("mismatched chamber weights")
        cutoff = min(self.cutoff, other.cutoff)
        out: dict = {}
        for i1, v1 in self.terms.items():
            w1 = i1.weighted(self.omega)
            for i2, v2 in other.terms.items():
                if w1 + i2.weighted(self.omega) > cutoff:
                    continue
                idx = DegreeIndex(
                    tuple(a + b for a, b in zip(i1.d, i2.d)), i1.D + i2.D
                )
                prod = v1 * v2
                out[idx] = out[idx] + prod if idx in out else prod
        return NovikovSeries(self.omega, cutoff, out)

    def map_values(self, fn) -> "NovikovSeries":
        return NovikovSeries(
            self.omega, self.cutoff, {i: fn(v) for i, v in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, NovikovSeries):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        for k in keys:
            a, b = self.terms.get(k), other.terms.get(k)
            if a is None:
                a, b = b, a
            if b is None:
                if not _is_zero(a):
                    return False
            elif not a == b:
                return False
        return True

    __hash__ = None


def _is_zero(val) -> bool:
    if hasattr(val, "is_zero"):
        return val.is_zero()
    return val == 0
