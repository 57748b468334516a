"""Exact univariate rational functions over Q.

Torus weights are restricted to a generic line in the weight lattice
(lambda_j = c_j * s with fixed rationals c_j), so every weight becomes a
Q-multiple of a single formal parameter s and all coefficient
arithmetic happens in the field Q(s).  A :class:`Scalar` is a reduced
fraction of polynomials in s: gcd(num, den) = 1 and den is monic.
Everything is exact; no floating point enters the kernel.

Polynomials are little-endian tuples of ``Fraction`` (index = degree).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from ..errors import NoLimitError

Poly = tuple

_ZERO = Fraction(0)
_ONE = Fraction(1)


def poly(coeffs: Iterable) -> Poly:
    """Normalize an iterable of rationals into a polynomial tuple."""
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def pscale(a: Poly, c: Fraction) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    """Polynomial division with remainder over Q."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        coeff = r[k + len(b) - 1] / lead
        if coeff:
            q[k] = coeff
            for j, y in enumerate(b):
                r[k + j] -= coeff * y
    while r and r[-1] == 0:
        r.pop()
    return tuple(q), tuple(r)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd via Euclid's algorithm."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    if a:
        a = pscale(a, 1 / a[-1])
    return a


def peval(a: Poly, x: Fraction) -> Fraction:
    out = _ZERO
    for c in reversed(a):
        out = out * x + c
    return out


def pstr(a: Poly, var: str = "s") -> str:
    if not a:
        return "0"
    parts = []
    for i, c in enumerate(a):
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("%s*%s" % (c, var) if c != 1 else var)
        else:
            parts.append("%s*%s^%d" % (c, var, i) if c != 1 else "%s^%d" % (var, i))
    return " + ".join(parts).replace("+ -", "- ")


class Scalar:
    """Element of Q(s) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = (_ONE,)
        if not isinstance(num, tuple):
            num = poly([num]) if not isinstance(num, (list,)) else poly(num)
        if not isinstance(den, tuple):
            den = poly([den]) if not isinstance(den, (list,)) else poly(den)
        if not den:
            raise ZeroDivisionError("scalar with zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_fraction(x) -> "Scalar":
        x = Fraction(x)
        return Scalar(poly([x]), (_ONE,), _reduced=True)

    @staticmethod
    def s_times(c) -> "Scalar":
        """The scalar c*s (a weight evaluated on the lambda-line)."""
        c = Fraction(c)
        if c == 0:
            return ZERO
        return Scalar(poly([0, c]), (_ONE,), _reduced=True)

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        num = padd(pmul(self.num, o.den), pmul(o.num, self.den))
        return Scalar(num, pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(pneg(self.num), self.den, _reduced=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Scalar(pmul(self.num, o.num), pmul(self.den, o.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("scalar division by zero")
        return Scalar(pmul(self.num, o.den), pmul(self.den, o.num))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o / self

    def __pow__(self, n: int):
        if n < 0:
            return (ONE / self) ** (-n)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def inv(self) -> "Scalar":
        return ONE / self

    # -- comparison / hashing ------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    # -- evaluation ----------------------------------------------------

    def at_zero(self) -> Fraction:
        """Value at s = 0 (the non-equivariant limit), exact.

        Raises NoLimitError when the reduced denominator vanishes at 0.
        """
        d0 = peval(self.den, _ZERO)
        if d0 == 0:
            raise NoLimitError("no limit at s=0: %s" % self)
        return peval(self.num, _ZERO) / d0

    def as_fraction(self) -> Fraction:
        """The value of a constant scalar; raises for genuine functions."""
        if len(self.num) > 1 or len(self.den) > 1:
            raise ValueError("scalar is not constant: %s" % self)
        return (self.num[0] if self.num else _ZERO) / self.den[0]

    # -- presentation ---------------------------------------------------

    def __repr__(self):
        if self.den == (_ONE,):
            return "(%s)" % pstr(self.num)
        return "(%s)/(%s)" % (pstr(self.num), pstr(self.den))

    def key(self):
        """Canonical sort key (tuples of Fractions are orderable)."""
        return (self.num, self.den)


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not num:
        return (), (_ONE,)
    g = pgcd(num, den)
    if len(g) > 1:
        num = pdivmod(num, g)[0]
        den = pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = pscale(num, 1 / lead)
        den = pscale(den, 1 / lead)
    return num, den


ZERO = Scalar(poly([]), (_ONE,), _reduced=True)
ONE = Scalar(poly([1]), (_ONE,), _reduced=True)
S = Scalar(poly([0, 1]), (_ONE,), _reduced=True)
