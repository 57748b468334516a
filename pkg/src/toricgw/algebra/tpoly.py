"""Polynomials in the divisor variables, truncated by total degree.

Exponential prefactors like e^{P t/z}, e^{dt} and the dilaton dressing
e^{tau_0/z} are carried as truncated polynomial series in the formal
variables (t_1..t_K, tau0[, tau1]) up to a configured order.  The
identities verified downstream are graded in these variables, so
truncation preserves exactness order by order.

Values are duck-typed: they need +, * (with each other and with
Fraction) and is_zero().
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial


@dataclass(frozen=True)
class TContext:
    vars: tuple
    order: int

    def monomials(self):
        """All exponent tuples of total degree <= order, sorted."""
        out = []

        def rec(prefix, remaining):
            if len(prefix) == len(self.vars):
                out.append(tuple(prefix))
                return
            for e in range(remaining + 1):
                rec(prefix + [e], remaining - e)

        rec([], self.order)
        return sorted(out)

    def zero_mono(self) -> tuple:
        return (0,) * len(self.vars)

    def index(self, name: str) -> int:
        return self.vars.index(name)


class TPolynomial:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: TContext, terms=None):
        self.ctx = ctx
        self.terms = {}
        if terms:
            for mono, val in terms.items():
                if sum(mono) <= ctx.order and not _is_zero(val):
                    self.terms[mono] = val

    @staticmethod
    def constant(ctx: TContext, val) -> "TPolynomial":
        return TPolynomial(ctx, {ctx.zero_mono(): val})

    def is_zero(self) -> bool:
        return not self.terms

    def get(self, mono):
        return self.terms.get(tuple(mono))

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def __add__(self, other: "TPolynomial") -> "TPolynomial":
        out = dict(self.terms)
        for mono, val in other.terms.items():
            out[mono] = out[mono] + val if mono in out else val
        return TPolynomial(self.ctx, out)

    def __mul__(self, other):
        if isinstance(other, TPolynomial):
            out: dict = {}
            order = self.ctx.order
            for m1, v1 in self.terms.items():
                deg1 = sum(m1)
                for m2, v2 in other.terms.items():
                    if deg1 + sum(m2) > order:
                        continue
                    mono = tuple(a + b for a, b in zip(m1, m2))
                    prod = v1 * v2
                    out[mono] = out[mono] + prod if mono in out else prod
            return TPolynomial(self.ctx, out)
        return TPolynomial(self.ctx, {m: v * other for m, v in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self):
        return self * Fraction(-1)

    def __sub__(self, other):
        return self + (-other)

    def map_values(self, fn) -> "TPolynomial":
        return TPolynomial(self.ctx, {m: fn(v) for m, v in self.terms.items()})

    def derivative(self, var: str) -> "TPolynomial":
        """d/d var; the top total degree of the result is order-1 exact."""
        i = self.ctx.index(var)
        out = {}
        for mono, val in self.terms.items():
            if mono[i] == 0:
                continue
            lowered = mono[:i] + (mono[i] - 1,) + mono[i + 1 :]
            out[lowered] = val * Fraction(mono[i])
        return TPolynomial(self.ctx, out)

    def scale_var(self, var: str, c) -> "TPolynomial":
        """Substitute var -> c*var."""
        i = self.ctx.index(var)
        c = Fraction(c)
        return TPolynomial(
            self.ctx, {m: v * c ** m[i] for m, v in self.terms.items()}
        )

    def at_origin(self):
        """The coefficient of the constant monomial (or None)."""
        return self.terms.get(self.ctx.zero_mono())

    def truncated(self, order: int) -> "TPolynomial":
        return TPolynomial(
            TContext(self.ctx.vars, order),
            {m: v for m, v in self.terms.items() if sum(m) <= order},
        )

    def __eq__(self, other):
        if not isinstance(other, TPolynomial):
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

    def __repr__(self):
        bits = []
        for mono, val in sorted(self.terms.items()):
            name = "*".join(
                "%s^%d" % (v, e) if e > 1 else v
                for v, e in zip(self.ctx.vars, mono)
                if e
            )
            bits.append("%s: %r" % (name or "1", val))
        return "{" + ", ".join(bits) + "}"


def exp_linear(ctx: TContext, coeffs: dict, one) -> TPolynomial:
    """exp(sum_v coeffs[v] * v) truncated at the context order.

    ``coeffs`` maps variable names to coefficient values; ``one`` is the
    multiplicative unit of the value ring.
    """
    out = TPolynomial.constant(ctx, one)
    for var, cf in coeffs.items():
        if _is_zero(cf):
            continue
        i = ctx.index(var)
        terms = {}
        power = one
        for a in range(ctx.order + 1):
            mono = [0] * len(ctx.vars)
            mono[i] = a
            terms[tuple(mono)] = power * Fraction(1, factorial(a))
            if a < ctx.order:
                power = power * cf
        out = out * TPolynomial(ctx, terms)
    return out


def _is_zero(val) -> bool:
    if hasattr(val, "is_zero"):
        return val.is_zero()
    return val == 0
