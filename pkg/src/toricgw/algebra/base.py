"""The truncated coefficient ring Q(s)[h]/(h^{r+1}).

For a projective-space base P^r, cohomology classes of the base are
polynomials in the hyperplane class h truncated at h^{r+1}; r = 0
encodes a point base, where an element is just a wrapped Scalar.
An element is invertible iff its h^0 part is a nonzero Scalar, and the
inverse is the finite geometric series in the nilpotent part.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NotInvertibleError
from .scalar import ONE as S_ONE
from .scalar import ZERO as S_ZERO
from .scalar import Scalar


class BaseElement:
    """Sequence of r+1 Scalars: coefficients of h^0 .. h^r."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(coeffs)
        if not self.coeffs:
            raise ValueError("empty coefficient tuple")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def scalar(x, width: int) -> "BaseElement":
        if not isinstance(x, Scalar):
            x = Scalar.from_fraction(x)
        return BaseElement((x,) + (S_ZERO,) * (width - 1))

    @staticmethod
    def zero(width: int) -> "BaseElement":
        return BaseElement((S_ZERO,) * width)

    @staticmethod
    def one(width: int) -> "BaseElement":
        return BaseElement.scalar(S_ONE, width)

    @staticmethod
    def h(width: int, power: int = 1) -> "BaseElement":
        """The class h^power, or zero when power exceeds the truncation."""
        c = [S_ZERO] * width
        if power < width:
            c[power] = S_ONE
        return BaseElement(c)

    # -- structure -------------------------------------------------------

    @property
    def width(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def scalar_part(self) -> Scalar:
        return self.coeffs[0]

    def nilpotent_part(self) -> "BaseElement":
        return BaseElement((S_ZERO,) + self.coeffs[1:])

    def is_scalar_invertible(self) -> bool:
        return not self.coeffs[0].is_zero()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BaseElement):
            if other.width != self.width:
                raise ValueError("mixed truncation widths")
            return other
        if isinstance(other, (int, Fraction, Scalar)):
            return BaseElement.scalar(other, self.width)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return BaseElement(a + b for a, b in zip(self.coeffs, o.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return BaseElement(-a for a in self.coeffs)

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
        w = self.width
        out = [S_ZERO] * w
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(w - i):
                b = o.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return BaseElement(out)

    __rmul__ = __mul__

    def inv(self) -> "BaseElement":
        a = self.coeffs[0]
        if a.is_zero():
            raise NotInvertibleError(
                "element with vanishing scalar part is not invertible: %r" % self
            )
        ainv = a.inv()
        u = BaseElement.scalar(ainv, self.width)
        n = self.nilpotent_part() * ainv
        # 1/(a(1+n/a)) = (1/a) * sum (-n/a)^k, finite since h nilpotent
        out = u
        term = u
        for _ in range(1, self.width):
            term = -(term * n)
            out = out + term
        return out

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return o * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = BaseElement.one(self.width)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / presentation ------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def key(self):
        return tuple(c.key() for c in self.coeffs)

    def at_zero(self) -> tuple:
        """Componentwise value at s = 0 (tuple of Fractions)."""
        return tuple(c.at_zero() for c in self.coeffs)

    def __repr__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if i == 0:
                parts.append(repr(c))
            elif i == 1:
                parts.append("%r*h" % c)
            else:
                parts.append("%r*h^%d" % (c, i))
        return " + ".join(parts) if parts else "0"
