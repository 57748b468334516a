"""Hypergeometric series: Gamma-ratio products, fixed-point
restrictions, projective-bundle series, base J-functions and the
divisor shift.

The restriction to a fixed point alpha is

    J^alpha(z) = e^{P^alpha t/z} sum_{D} sum_{d}
        J_D(z,tau) (Q^D q^{P^alpha(D)}) q^d e^{dt} e^{P^alpha(D)t} /
        [ prod_{j in alpha} prod_{m<=U_j(d)} (mz)
          prod_{j not in alpha} prod_{m<=U_j(d)+alpha^*U_j(D)} (alpha^*U_j + mz) ]

with products interpreted as Gamma-function ratios (negative upper
limits move factors to the other side).  Terms with U_j(d) < 0 for some
j in alpha vanish identically and are omitted; the support therefore
lies in the effective range of the fixed point.  Exponential prefactors
are expanded in the divisor variables to the configured order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .algebra.base import BaseElement
from .algebra.novikov import DegreeIndex, NovikovSeries
from .algebra.tpoly import TContext, TPolynomial, exp_linear
from .algebra.zrational import FactoredLinear, ZRationalFunction
from .cohomology import (
    LaurentPolynomial,
    inverse_linear_factor,
    ring_from_bundle_spec,
    ring_from_point_spec,
)
from .errors import SpecValidationError, ZeroFactorError
from .toric import FixedPoint, ToricFibrationSpec


# ---------------------------------------------------------------------------
# Gamma-ratio products


def gamma_ratio_factors(U: BaseElement | None, n: int) -> tuple[FactoredLinear, bool]:
    """The product prod_{m=1}^{n} (U + mz) in factored form.

    Returns (factors, reciprocal): for n >= 0 the product itself, for
    n < 0 the factors of 1/prod_{m=n+1}^{0}(U + mz) with ``reciprocal``
    set.  ``U is None`` encodes the identically-zero class (pure mz
    factors), which is only legal for n >= 0.
    """
    if U is None:
        if n < 0:
            raise ZeroFactorError(
                "zero factor in denominator: U = 0 with negative exponent"
            )
        return FactoredLinear(factorial(n), n, ()), False
    if n >= 0:
        return FactoredLinear(1, 0, tuple((U, m) for m in range(1, n + 1))), False
    return FactoredLinear(1, 0, tuple((U, m) for m in range(n + 1, 1))), True


def gamma_ratio_product(U: BaseElement | None, n: int, width: int) -> ZRationalFunction:
    """The Gamma-ratio product as a z-rational function."""
    fl, reciprocal = gamma_ratio_factors(U, n)
    one = ZRationalFunction.const(1, width)
    return one.div_factored(fl) if reciprocal else one.mul_factored(fl)


def _apply_gamma(value: TPolynomial, U, n: int) -> TPolynomial:
    """Divide a t-polynomial of z-rational functions by a Gamma-ratio."""
    fl, reciprocal = gamma_ratio_factors(U, n)
    if reciprocal:
        return value.map_values(lambda f: f.mul_factored(fl))
    return value.map_values(lambda f: f.div_factored(fl))


# ---------------------------------------------------------------------------
# base J-functions


@dataclass
class BaseJFunction:
    """Degree-by-degree J-function of the base, dressed with the small
    parameters tau0 (unit direction) and, for P^r, tau1 (hyperplane)."""

    r: int
    ctx: TContext
    terms: dict  # D -> TPolynomial over ZRationalFunction

    def term(self, D: int) -> TPolynomial:
        return self.terms[D]


def base_j_function(spec: ToricFibrationSpec, ctx: TContext, Dmax: int) -> BaseJFunction:
    """J_B for a point (z e^{tau0/z}) or P^r base (hypergeometric form
    with denominator prod_{m<=D} (h+mz)^{r+1})."""
    width = spec.width
    zfun = ZRationalFunction.z(width)
    one = ZRationalFunction.const(1, width)
    terms = {}
    if spec.r == 0:
        e0 = exp_linear(ctx, {"tau0": ZRationalFunction.z(width, -1)}, one)
        terms[0] = e0.map_values(lambda f: f * zfun)
        return BaseJFunction(0, ctx, terms)
    h = BaseElement.h(width)
    for D in range(Dmax + 1):
        coeffs = {
            "tau0": ZRationalFunction.z(width, -1),
            "tau1": ZRationalFunction((h,), zpow=1, width=width)
            + ZRationalFunction.const(D, width),
        }
        tp = exp_linear(ctx, coeffs, one).map_values(lambda f: f * zfun)
        den = FactoredLinear(1, 0, tuple((h, m) for m in range(1, D + 1) for _ in range(spec.r + 1)))
        tp = tp.map_values(lambda f: f.div_factored(den))
        terms[D] = tp
    return BaseJFunction(spec.r, ctx, terms)


def divisor_shift(baseJ: BaseJFunction, rho_h: Fraction, var: str) -> BaseJFunction:
    """Multiply J_D by e^{rho var/z} e^{rho(D) var} for rho = rho_h * h.

    Realizes the divisor-equation symmetry
    J(z, tau + t rho) = e^{rho t/z} sum_D Q^D e^{rho(D) t} J_D(z, tau).
    """
    if baseJ.r < 1:
        raise SpecValidationError("point base has no divisor directions")
    ctx = baseJ.ctx
    out = {}
    for D, tp in baseJ.terms.items():
        sample = next(iter(tp.terms.values()))
        width = sample.width
        h = BaseElement.h(width) * rho_h
        coeff = ZRationalFunction((h,), zpow=1, width=width) + ZRationalFunction.const(
            Fraction(rho_h) * D, width
        )
        factor = exp_linear(ctx, {var: coeff}, ZRationalFunction.const(1, width))
        out[D] = tp * factor
    return BaseJFunction(baseJ.r, ctx, out)


# ---------------------------------------------------------------------------
# fixed-point restrictions


@dataclass
class RestrictedIFunction:
    point: FixedPoint
    series: NovikovSeries  # DegreeIndex -> TPolynomial over ZRationalFunction
    ctx: TContext
    cutoff: Fraction
    t_order: int

    def coefficient(self, idx: DegreeIndex) -> TPolynomial | None:
        return self.series.get(idx)


def restrict_I(
    spec: ToricFibrationSpec,
    point: FixedPoint,
    baseJ: BaseJFunction | None,
    cutoff,
    t_order: int,
) -> RestrictedIFunction:
    cutoff = Fraction(cutoff)
    ctx = TContext(spec.tvars(), t_order)
    if baseJ is None:
        baseJ = base_j_function(spec, ctx, int(cutoff))
    if baseJ.ctx != ctx:
        raise SpecValidationError("base J-function context mismatch")
    width = spec.width
    x = point.chamber_coordinates()
    P_elems = [spec.weight_element(w) for w in point.P]
    normals = point.normal_weights()
    terms = {}
    Dmax = int(cutoff) if spec.r >= 1 else 0
    for D in range(Dmax + 1):
        if D not in baseJ.terms:
            continue
        shift = point.P_of_D(D)
        wshift = sum(
            (w * v for w, v in zip(spec.omega, shift)), Fraction(D)
        )
        bound = cutoff - wshift
        for u in _boxes_list(x, bound):
            d = point.degree_from_box(u)
            idx = DegreeIndex(tuple(a + b for a, b in zip(d, shift)), D)
            # e^{P^alpha t/z} e^{dt} e^{P^alpha(D) t}: exponent of t_i is
            # P_i/z + (absolute fiber degree)_i
            coeffs = {}
            for i in range(spec.K):
                cf = ZRationalFunction((P_elems[i],), zpow=1, width=width)
                if idx.d[i]:
                    cf = cf + ZRationalFunction.const(idx.d[i], width)
                coeffs["t%d" % (i + 1)] = cf
            value = baseJ.term(D) * exp_linear(
                ctx, coeffs, ZRationalFunction.const(1, width)
            )
            # Gamma-ratio denominators
            for pos, j in enumerate(point.alpha):
                value = _apply_gamma(value, None, u[pos])
            for j, w in normals.items():
                aUD = w.pair_base_degree(D)
                if aUD.denominator != 1:
                    raise SpecValidationError("non-integral twist pairing")
                n = spec.U_of_degree(j, d) + int(aUD)
                value = _apply_gamma(value, spec.weight_element(w), n)
            terms[idx] = value
    series = NovikovSeries(spec.omega, cutoff, terms)
    return RestrictedIFunction(point, series, ctx, cutoff, t_order)


def restrict_all(spec, cutoff, t_order, baseJ=None) -> dict:
    ctx = TContext(spec.tvars(), t_order)
    if baseJ is None:
        baseJ = base_j_function(spec, ctx, int(Fraction(cutoff)))
    return {
        p: restrict_I(spec, p, baseJ, cutoff, t_order) for p in spec.fixed_points()
    }


def _boxes_list(x, bound):
    from .toric import _boxes

    return list(_boxes(x, bound))


# ---------------------------------------------------------------------------
# non-equivariant series (over the finite cohomology ring)


@dataclass
class NonEquivariantSeries:
    """A (q, Q)-series whose coefficients are t-polynomials of finite
    Laurent polynomials over the rational cohomology ring."""

    ring: object
    ctx: TContext
    series: NovikovSeries
    divisor_vars: tuple  # (var name, ring element) pairs, degree-2 basis

    def coefficient(self, idx: DegreeIndex):
        return self.series.get(idx)


def nonequivariant_toric(spec: ToricFibrationSpec, cutoff, t_order) -> NonEquivariantSeries:
    """The explicit series of the toric mirror theorem over a point base:

        I_X = z e^{(tau0 + P t)/z} sum_d q^d e^{dt} /
              prod_j prod_{m<=U_j(d)} (U_j + mz),

    supported on the union of the fixed-point boxes (the Mori cone)."""
    if spec.r != 0:
        raise SpecValidationError("point base required")
    cutoff = Fraction(cutoff)
    ring = ring_from_point_spec(spec)
    ctx = TContext(spec.tvars(), t_order)
    P = [ring.gen(i) for i in range(spec.K)]
    support = set()
    for p in spec.fixed_points():
        x = p.chamber_coordinates()
        for u in _boxes_list(x, cutoff):
            support.add(p.degree_from_box(u))
    terms = {}
    for d in sorted(support):
        U_exps = [spec.U_of_degree(j, d) for j in range(spec.N)]
        value = _ne_term(ring, ctx, P, d, U_exps, spec)
        if value is not None:
            terms[DegreeIndex(d, 0)] = value
    series = NovikovSeries(spec.omega, cutoff, terms)
    dvars = tuple(("t%d" % (i + 1), P[i]) for i in range(spec.K))
    return NonEquivariantSeries(ring, ctx, series, dvars)


def _ne_term(ring, ctx, P, d, U_exps, spec):
    one_l = LaurentPolynomial.const(ring.one())
    zinv = LaurentPolynomial.const(ring.one(), -1)
    coeffs = {"tau0": zinv}
    for i in range(spec.K):
        cf = LaurentPolynomial.const(P[i], -1)
        if d[i]:
            cf = cf + LaurentPolynomial.const(ring.one() * d[i])
        coeffs["t%d" % (i + 1)] = cf
    value = exp_linear(ctx, coeffs, one_l)
    value = value.map_values(lambda f: f.shifted(1))  # overall factor z
    for j, n in enumerate(U_exps):
        U = ring.zero()
        for i in range(spec.K):
            if spec.m[i][j]:
                U = U + P[i] * spec.m[i][j]
        if n >= 0:
            for m in range(1, n + 1):
                inv = inverse_linear_factor(U, m)
                value = value.map_values(lambda f, inv=inv: f * inv)
        else:
            for m in range(n + 1, 1):
                fac = LaurentPolynomial(ring, {0: U, 1: ring.one() * m})
                value = value.map_values(lambda f, fac=fac: f * fac)
    if all(v.is_zero() for v in value.terms.values()):
        return None
    return value


def nonequivariant_bundle(spec: ToricFibrationSpec, cutoff, t_order) -> NonEquivariantSeries:
    """The closed-form projective-fibration series (K = 1 over P^r):

        I = e^{Pt/z} sum_D J_D Q^D sum_d q^d e^{dt} /
            prod_j prod_{m<=d-Lambda_j(D)} (P - Lambda_j + mz),

    where the d-range starts at min_j Lambda_j(D) (below it the
    numerator contains the vanishing product of all P - Lambda_j)."""
    if spec.K != 1 or spec.r < 1:
        raise SpecValidationError("K = 1 bundle over P^r required")
    cutoff = Fraction(cutoff)
    ring = ring_from_bundle_spec(spec)
    ctx = TContext(spec.tvars(), t_order)
    P, h = ring.gen(0), ring.gen(1)
    one_l = LaurentPolynomial.const(ring.one())
    terms = {}
    for D in range(int(cutoff) + 1):
        lam_D = [-spec.twists[j] * D for j in range(spec.N)]
        dmin = min(lam_D)
        d = dmin
        while Fraction(d) + D <= cutoff:
            coeffs = {
                "tau0": LaurentPolynomial.const(ring.one(), -1),
                "tau1": LaurentPolynomial.const(h, -1)
                + LaurentPolynomial.const(ring.one() * D),
                "t1": LaurentPolynomial.const(P, -1)
                + LaurentPolynomial.const(ring.one() * d),
            }
            value = exp_linear(ctx, coeffs, one_l)
            value = value.map_values(lambda f: f.shifted(1))  # J_D carries z
            for m in range(1, D + 1):
                inv = inverse_linear_factor(h, m)
                for _ in range(spec.r + 1):
                    value = value.map_values(lambda f, inv=inv: f * inv)
            for j in range(spec.N):
                U = P + h * spec.twists[j]  # P - Lambda_j
                n = d - lam_D[j]
                if n >= 0:
                    for m in range(1, n + 1):
                        inv = inverse_linear_factor(U, m)
                        value = value.map_values(lambda f, inv=inv: f * inv)
                else:
                    for m in range(n + 1, 1):
                        fac = LaurentPolynomial(ring, {0: U, 1: ring.one() * m})
                        value = value.map_values(lambda f, fac=fac: f * fac)
            if not all(v.is_zero() for v in value.terms.values()):
                terms[DegreeIndex((d,), D)] = value
            d += 1
    series = NovikovSeries((Fraction(1),), cutoff, terms)
    dvars = (("t1", P), ("tau1", h))
    return NonEquivariantSeries(ring, ctx, series, dvars)


def build_I_bundle(spec: ToricFibrationSpec, cutoff, t_order):
    """Both routes for a projective fibration: the equivariant
    fixed-point restrictions, and (for K = 1) the closed-form
    non-equivariant series."""
    if spec.r < 1:
        raise SpecValidationError("bundle spec required (projective base)")
    restricted = restrict_all(spec, cutoff, t_order)
    ne = nonequivariant_bundle(spec, cutoff, t_order) if spec.K == 1 else None
    return restricted, ne
