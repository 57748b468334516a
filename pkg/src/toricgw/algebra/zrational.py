"""Rational functions of z with factored linear denominators.

A value is  num(z) / (z^zpow * prod (w + m z)^mult)  where num is a
polynomial in z with BaseElement coefficients, m is a nonzero integer
and every kept factor has w with invertible scalar part.  Denominators
are never expanded: residue extraction at the simple poles z = -w/m is
the central operation and the factored form makes it exact and cheap.

Two normalizations keep the representation canonical enough:

* factors whose w is nilpotent (vanishing scalar part, e.g. h + m z)
  are folded into the numerator through the finite expansion
  1/(w + mz) = sum_{i<=r} (-w)^i / (mz)^{i+1};
* factors with m = 0 are constants and are divided into the numerator.

Equality is decided by cross-multiplication, not canonical form.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import NonSimplePoleError, NotInvertibleError
from .base import BaseElement
from .scalar import Scalar

ZPoly = tuple  # little-endian tuple of BaseElement


def _znormalize(coeffs) -> ZPoly:
    c = list(coeffs)
    while c and c[-1].is_zero():
        c.pop()
    return tuple(c)


def _zadd(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = out[i] + x
    return _znormalize(out)


def _zmul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ()
    width = a[0].width
    zero = BaseElement.zero(width)
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if not y.is_zero():
                out[i + j] = out[i + j] + x * y
    return _znormalize(out)


def _zscale(a: ZPoly, c) -> ZPoly:
    return _znormalize(x * c for x in a)


def _zeval(a: ZPoly, z0: BaseElement) -> BaseElement:
    out = BaseElement.zero(z0.width)
    for c in reversed(a):
        out = out * z0 + c
    return out


def _zshift(a: ZPoly, k: int) -> ZPoly:
    """Multiply by z^k (k >= 0)."""
    if not a or k == 0:
        return a
    zero = BaseElement.zero(a[0].width)
    return (zero,) * k + tuple(a)


class FactoredLinear:
    """const * z^zpow * prod (w + m z): a product kept in factored form.

    Used to move Gamma-ratio products in and out of denominators without
    expanding them.
    """

    __slots__ = ("const", "zpow", "factors")

    def __init__(self, const=Fraction(1), zpow: int = 0, factors=()):
        self.const = Fraction(const)
        self.zpow = zpow
        self.factors = tuple(factors)  # (w: BaseElement, m: int) with repetition

    def __mul__(self, other: "FactoredLinear") -> "FactoredLinear":
        return FactoredLinear(
            self.const * other.const,
            self.zpow + other.zpow,
            self.factors + other.factors,
        )

    def expand(self, width: int) -> ZPoly:
        out: ZPoly = (BaseElement.scalar(self.const, width),)
        for w, m in self.factors:
            out = _zmul(out, (w, BaseElement.scalar(m, width)))
        return _zshift(out, self.zpow)


class ZRationalFunction:
    __slots__ = ("num", "zpow", "den", "width")

    def __init__(self, num, zpow: int = 0, den=(), width: int | None = None):
        """Build and normalize; ``den`` is an iterable of (w, m, mult)."""
        num = _znormalize(num)
        if width is None:
            if not num:
                raise ValueError("width required for the zero function")
            width = num[0].width
        self.width = width
        collected: dict = {}
        for w, m, mult in den:
            if mult == 0 or not num:
                continue
            if m != 0 and w.is_scalar_invertible():
                k = (w.key(), m)
                if k in collected:
                    collected[k] = (w, m, collected[k][2] + mult)
                else:
                    collected[k] = (w, m, mult)
            elif m == 0:
                # constant factor: divide into the numerator
                num = _zscale(num, w.inv() ** mult)
            elif w.is_zero():
                zpow += mult
            else:
                # nilpotent w: fold 1/(w+mz)^mult into numerator exactly
                for _ in range(mult):
                    num, extra = _fold_nilpotent(num, w, m, width)
                    zpow += extra
        while zpow > 0 and num and num[0].is_zero():
            num = num[1:]
            zpow -= 1
        if not num:
            self.num = ()
            self.zpow = 0
            self.den = ()
            return
        self.num = num
        self.zpow = zpow
        self.den = tuple(sorted(collected.values(), key=lambda t: (t[0].key(), t[1])))

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(width: int) -> "ZRationalFunction":
        return ZRationalFunction((), width=width)

    @staticmethod
    def const(x, width: int) -> "ZRationalFunction":
        if not isinstance(x, BaseElement):
            x = BaseElement.scalar(x, width)
        return ZRationalFunction((x,), width=width)

    @staticmethod
    def z(width: int, power: int = 1) -> "ZRationalFunction":
        """z^power for any integer power."""
        one = BaseElement.one(width)
        if power >= 0:
            return ZRationalFunction(_zshift((one,), power), width=width)
        return ZRationalFunction((one,), zpow=-power, width=width)

    def is_zero(self) -> bool:
        return not self.num

    # -- ring operations ------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, ZRationalFunction):
            if self.is_zero() or other.is_zero():
                return ZRationalFunction.zero(self.width)
            return ZRationalFunction(
                _zmul(self.num, other.num),
                self.zpow + other.zpow,
                self.den + other.den,
                width=self.width,
            )
        if isinstance(other, (int, Fraction, Scalar, BaseElement)):
            return ZRationalFunction(
                _zscale(self.num, other), self.zpow, self.den, width=self.width
            )
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self * Fraction(-1)

    def __add__(self, other):
        if not isinstance(other, ZRationalFunction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lcm: dict = {}
        for w, m, mult in self.den + other.den:
            k = (w.key(), m)
            if k in lcm:
                lcm[k] = (w, m, max(mult, lcm[k][2]))
            else:
                lcm[k] = (w, m, mult)
        zp = max(self.zpow, other.zpow)

        def complement(f: "ZRationalFunction") -> ZPoly:
            own = {(w.key(), m): mult for w, m, mult in f.den}
            fl = FactoredLinear(1, zp - f.zpow)
            for k, (w, m, mult) in lcm.items():
                extra = mult - own.get(k, 0)
                if extra:
                    fl = fl * FactoredLinear(1, 0, ((w, m),) * extra)
            return _zmul(f.num, fl.expand(f.width))

        num = _zadd(complement(self), complement(other))
        return ZRationalFunction(num, zp, tuple(lcm.values()), width=self.width)

    def __sub__(self, other):
        return self + (-other)

    def mul_factored(self, fl: FactoredLinear) -> "ZRationalFunction":
        return ZRationalFunction(
            _zmul(self.num, fl.expand(self.width)), self.zpow, self.den, width=self.width
        )

    def div_factored(self, fl: FactoredLinear) -> "ZRationalFunction":
        if fl.const == 0:
            raise ZeroDivisionError("division by zero factored product")
        den = self.den + tuple((w, m, 1) for w, m in fl.factors)
        return ZRationalFunction(
            _zscale(self.num, Fraction(1) / fl.const),
            self.zpow + fl.zpow,
            den,
            width=self.width,
        )

    # -- evaluation -------------------------------------------------------------

    def eval(self, z0: BaseElement) -> BaseElement:
        """Exact value at z = z0 (scalar part of z0 nonzero when needed)."""
        val = _zeval(self.num, z0)
        if self.zpow:
            val = val * z0.inv() ** self.zpow
        for w, m, mult in self.den:
            fac = w + z0 * m
            if not fac.is_scalar_invertible():
                if fac.is_zero():
                    raise ZeroDivisionError(
                        "denominator factor (%r + %d z) vanishes at z0 = %r"
                        % (w, m, z0)
                    )
                raise NotInvertibleError(
                    "denominator factor (%r + %d z) is nilpotent at z0 = %r; "
                    "choose a different lambda-line" % (w, m, z0)
                )
            val = val * fac.inv() ** mult
        return val

    def residue_at(self, z0: BaseElement) -> BaseElement:
        """Res_{z=z0} f dz for a simple pole (zero when there is no pole)."""
        num = self.num
        matching = []
        others = []
        for w, m, mult in self.den:
            if (w + z0 * m).is_zero():
                matching.append((w, m, mult))
            else:
                others.append((w, m, mult))
        mu = sum(mult for _, _, mult in matching)
        if mu == 0:
            return BaseElement.zero(self.width)
        flat = [(w, m) for w, m, mult in matching for _ in range(mult)]
        # cancel removable occurrences: num divisible by (z - z0)
        while mu > 1 and num and _zeval(num, z0).is_zero():
            num = _divide_root(num, z0)
            _, m = flat.pop()
            num = _zscale(num, Fraction(1, m))
            mu -= 1
        if mu > 1:
            raise NonSimplePoleError("pole of multiplicity %d at z = %r" % (mu, z0))
        _, m = flat[0]
        rest = ZRationalFunction(num, self.zpow, others, width=self.width)
        return rest.eval(z0) * Fraction(1, m)

    def laurent_at_infinity(self, order: int) -> dict:
        """Coefficients of z^p for p >= -order, expanding at z = infinity.

        Each factor contributes 1/(w+mz) = (1/mz) sum (-w/mz)^i.
        Returns {exponent: BaseElement}, truncated below -order.
        """
        if self.is_zero():
            return {}
        low = -order - self.zpow  # accuracy needed before the z-shift
        series = {i: c for i, c in enumerate(self.num) if not c.is_zero()}
        for w, m, mult in self.den:
            for _ in range(mult):
                if not series:
                    return {}
                hi = max(series)
                inv = _inv_factor_series(w, m, low - hi, self.width)
                series = _series_mul(series, inv, low)
        return {
            p - self.zpow: c
            for p, c in series.items()
            if p - self.zpow >= -order and not c.is_zero()
        }

    # -- comparison ----------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ZRationalFunction):
            return NotImplemented
        left = _zmul(_zshift(self.num, other.zpow), _expand_den(other.den, self.width))
        right = _zmul(_zshift(other.num, self.zpow), _expand_den(self.den, self.width))
        return left == right

    __hash__ = None

    def key(self):
        """Canonical sort key of the normalized representation."""
        return (
            tuple(c.key() for c in self.num),
            self.zpow,
            tuple((w.key(), m, mult) for w, m, mult in self.den),
        )

    def __repr__(self):
        num = "[" + ", ".join("z^%d: %r" % (i, c) for i, c in enumerate(self.num)) + "]"
        out = num
        if self.zpow:
            out += " / z^%d" % self.zpow
        den = " ".join("((%r)+%dz)^%d" % (w, m, mult) for w, m, mult in self.den)
        if den:
            out += " / " + den
        return out


def _fold_nilpotent(num: ZPoly, w: BaseElement, m: int, width: int):
    """Multiply num by the finite expansion of 1/(w+mz), w nilpotent.

    1/(w+mz) = z^{-(r+1)} * sum_{i=0}^{r} (-w)^i m^{-(i+1)} z^{r-i}.
    Returns (new numerator, extra z-power r+1).
    """
    r = width - 1
    zero = BaseElement.zero(width)
    expansion = [zero] * (r + 1)
    minusw = -w
    pw = BaseElement.one(width)
    for i in range(r + 1):
        expansion[r - i] = pw * Fraction(1, m ** (i + 1))
        pw = pw * minusw
    return _zmul(num, tuple(expansion)), r + 1


def _divide_root(num: ZPoly, z0: BaseElement) -> ZPoly:
    """Exact quotient of num by (z - z0); the remainder num(z0) must vanish."""
    n = len(num) - 1
    if n < 0:
        return ()
    quotient = [None] * n
    carry = num[n]
    for i in range(n - 1, -1, -1):
        quotient[i] = carry
        carry = num[i] + z0 * carry
    return _znormalize(quotient)


def _expand_den(den, width: int) -> ZPoly:
    out: ZPoly = (BaseElement.one(width),)
    for w, m, mult in den:
        fac = (w, BaseElement.scalar(m, width))
        for _ in range(mult):
            out = _zmul(out, fac)
    return out


def _series_mul(a: dict, b: dict, low: int) -> dict:
    out: dict = {}
    for p, x in a.items():
        for q, y in b.items():
            r = p + q
            if r < low:
                continue
            v = x * y
            if r in out:
                out[r] = out[r] + v
            else:
                out[r] = v
    return {p: c for p, c in out.items() if not c.is_zero()}


def _inv_factor_series(w: BaseElement, m: int, low: int, width: int) -> dict:
    """1/(w+mz) as a Laurent series at infinity, exponents >= low."""
    out = {}
    term = BaseElement.scalar(Fraction(1, m), width)
    p = -1
    while p >= low:
        out[p] = term
        term = term * w * Fraction(-1, m)
        p -= 1
    return out
