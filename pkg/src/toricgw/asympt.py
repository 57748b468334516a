"""Formal one-dimensional stationary phase, Bernoulli numbers and the
Stirling-type Gamma factor series.

For a phase f(x) = f(0) - x^2/(2 sigma^2) + f_3 x^3 + f_4 x^4 + ... with
a non-degenerate critical point at x = 0 and an amplitude a(x) (whose
coefficients may carry inverse powers of z), the oscillating integral
has the expansion

    int e^{f(x)/z} a(x) dx ~ sqrt(2 pi z) sigma e^{f(0)/z} sum_k A_k z^k.

The coefficients A_k come from the substitution x = sqrt(z) y followed
by termwise Gaussian moments; they depend only on sigma^2, so the whole
computation is exact in any coefficient field.  sqrt(2 pi), e^{f(0)/z}
and the branch of sigma are never evaluated: the first two are opaque
markers and flipping the branch provably leaves every A_k unchanged
(odd moments vanish), which the engine exposes for testing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial


def _is_zero(v) -> bool:
    if hasattr(v, "is_zero"):
        return v.is_zero()
    return v == 0


@dataclass(frozen=True)
class PhaseData:
    """Coefficients of a phase expanded at its critical point."""

    sigma_sq: object  # -1/f''(0), nonzero
    higher: dict = field(default_factory=dict)  # k >= 3 -> coefficient of x^k
    critical_value: str = "f(0)"  # opaque marker, never evaluated

    def __post_init__(self):
        if _is_zero(self.sigma_sq):
            raise ZeroDivisionError("degenerate critical point: sigma^2 = 0")
        if any(k < 3 for k in self.higher):
            raise ValueError("higher phase coefficients start at x^3")


@dataclass(frozen=True)
class AmplitudeData:
    """a(x) = sum a_{m,i} x^m z^{-i}: map (m, zpow) -> coefficient.

    zpow is the (usually nonpositive) power of z carried by the term.
    """

    terms: dict = field(default_factory=dict)

    @staticmethod
    def from_x_coeffs(coeffs) -> "AmplitudeData":
        return AmplitudeData(
            {(m, 0): c for m, c in enumerate(coeffs) if not _is_zero(c)}
        )

    @staticmethod
    def one() -> "AmplitudeData":
        return AmplitudeData({(0, 0): Fraction(1)})


@dataclass
class AsymptoticExpansion:
    prefactor: str  # "sqrt(2 pi z) sigma e^{f(0)/z}", opaque
    coefficients: list  # A_0 .. A_n

    def is_trivial(self) -> bool:
        return all(_is_zero(a) for a in self.coefficients)


def double_factorial(n: int) -> int:
    """(n)!! with (-1)!! = 1."""
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


@dataclass(frozen=True)
class GaussianMoment:
    """int e^{-y^2/2 sigma^2} y^n dy: a multiple of the sqrt(2 pi) unit."""

    sqrt_two_pi: bool
    value: object


def gaussian_moment(n: int, sigma) -> GaussianMoment:
    """0 for odd n, sqrt(2 pi) sigma^{n+1} (n-1)!! for even n."""
    if n % 2:
        return GaussianMoment(True, Fraction(0))
    return GaussianMoment(True, sigma ** (n + 1) * double_factorial(n - 1))


def _table_mul(a: dict, b: dict, hmax: int) -> dict:
    out: dict = {}
    for (h1, n1), v1 in a.items():
        for (h2, n2), v2 in b.items():
            h = h1 + h2
            if h > hmax:
                continue
            key = (h, n1 + n2)
            v = v1 * v2
            out[key] = out[key] + v if key in out else v
    return {k: v for k, v in out.items() if not _is_zero(v)}


def _exp_tail(phase: PhaseData, hmax: int) -> dict:
    """exp(sum_{k>=3} f_k z^{(k-2)/2} y^k), doubled z-exponent <= hmax."""
    table = {(0, 0): Fraction(1)}
    for k in sorted(phase.higher):
        fk = phase.higher[k]
        if _is_zero(fk):
            continue
        h1 = k - 2
        sub = {(0, 0): Fraction(1)}
        power = Fraction(1)
        for p in range(1, hmax // h1 + 1):
            power = power * fk
            sub[(p * h1, p * k)] = power * Fraction(1, factorial(p))
        table = _table_mul(table, sub, hmax)
    return table


def stationary_phase(
    phase: PhaseData, amp: AmplitudeData, order: int, branch: int = 1
) -> AsymptoticExpansion:
    """A_0..A_order of the expansion; ``branch`` = +-1 selects the sign
    of sigma (the result is branch-independent, and computed so that the
    cancellation actually exercises the branch)."""
    if branch not in (1, -1):
        raise ValueError("branch must be +-1")
    hmax = 2 * order
    table = _exp_tail(phase, hmax)
    amp_table = {}
    for (m, zpow), c in amp.terms.items():
        h = m + 2 * zpow  # doubled exponent of z^{m/2 + zpow}
        if h <= hmax:
            key = (h, m)
            amp_table[key] = amp_table[key] + c if key in amp_table else c
    combined = _table_mul(table, amp_table, hmax)
    coeffs = [Fraction(0)] * (order + 1)
    s2 = phase.sigma_sq
    for (h, n), v in combined.items():
        # parity bookkeeping: every term has h = n (mod 2), so odd
        # (half-integer) powers of z come only with vanishing odd moments
        if (h - n) % 2:
            raise AssertionError("parity violation in stationary phase table")
        if n % 2:
            continue  # odd Gaussian moment
        if h % 2 or h < 0:
            continue
        k = h // 2
        if k > order:
            continue
        moment = double_factorial(n - 1) * s2 ** (n // 2) * branch**n
        coeffs[k] = coeffs[k] + v * moment
    return AsymptoticExpansion("sqrt(2 pi z) sigma e^{f(0)/z}", coeffs)


# ---------------------------------------------------------------------------
# total derivatives (integration by parts has trivial asymptotics)


def _xpoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for m1, v1 in a.items():
        for m2, v2 in b.items():
            key = m1 + m2
            v = v1 * v2
            out[key] = out[key] + v if key in out else v
    return out


def phase_derivative(phase: PhaseData) -> dict:
    """f'(x) as an x-polynomial {degree: coefficient}."""
    out = {1: Fraction(-1) / phase.sigma_sq}
    for k, fk in phase.higher.items():
        out[k - 1] = out.get(k - 1, Fraction(0)) + fk * k
    return {m: v for m, v in out.items() if not _is_zero(v)}


def total_derivative_amplitude(
    phase: PhaseData, amp: AmplitudeData, v: dict
) -> AmplitudeData:
    """The amplitude of d(e^{f/z} a v) / e^{f/z} dx = f' a v / z + (a v)'.

    ``v`` is the vector-field coefficient polynomial {degree: value}.
    """
    av: dict = {}
    for (m, zpow), c in amp.terms.items():
        for mv, cv in v.items():
            key = (m + mv, zpow)
            val = c * cv
            av[key] = av[key] + val if key in av else val
    out: dict = {}
    fprime = phase_derivative(phase)
    for (m, zpow), c in av.items():
        for mf, cf in fprime.items():
            key = (m + mf, zpow - 1)
            val = c * cf
            out[key] = out[key] + val if key in out else val
        if m >= 1:
            key = (m - 1, zpow)
            val = c * m
            out[key] = out[key] + val if key in out else val
    return AmplitudeData({k: v2 for k, v2 in out.items() if not _is_zero(v2)})


def check_total_derivative(
    phase: PhaseData, amp: AmplitudeData, v: dict, order: int
) -> bool:
    """True iff the expansion of the total-derivative integrand vanishes
    through the requested order (it must, exactly)."""
    integrand = total_derivative_amplitude(phase, amp, v)
    return stationary_phase(phase, integrand, order).is_trivial()


# ---------------------------------------------------------------------------
# Bernoulli numbers and the Gamma factor series


def bernoulli(m: int) -> Fraction:
    """Exact B_m from the defining recurrence
    sum_{k=0}^{n} C(n+1, k) B_k = 0 with B_0 = 1."""
    if m < 0:
        raise ValueError("Bernoulli index must be >= 0")
    B = [Fraction(1)]
    for n in range(1, m + 1):
        acc = sum(Fraction(comb(n + 1, k)) * B[k] for k in range(n))
        B.append(-acc / (n + 1))
    return B[m]


def _series_exp(coeffs: list, order: int) -> list:
    """exp of a series with zero constant term, truncated at ``order``."""
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    term = [Fraction(0)] * (order + 1)
    term[0] = Fraction(1)
    for p in range(1, order + 1):
        nxt = [Fraction(0)] * (order + 1)
        for i, a in enumerate(term):
            if a == 0:
                continue
            for j, b in enumerate(coeffs):
                if b and i + j <= order:
                    nxt[i + j] += a * b
        term = [x * Fraction(1, p) for x in nxt]
        out = [x + y for x, y in zip(out, term)]
        if all(x == 0 for x in term):
            break
    return out


def gamma_hat_series(order: int) -> list:
    """Coefficients (in u = z/nu) of
    exp(sum_{m>=1} B_{2m} / (2m (2m-1)) u^{2m-1}) through u^order.

    The sqrt(2 pi z / nu) prefactor and e^{(nu ln nu - nu)/z} marker are
    not part of the returned series.
    """
    arg = [Fraction(0)] * (order + 1)
    m = 1
    while 2 * m - 1 <= order:
        arg[2 * m - 1] = bernoulli(2 * m) / (2 * m * (2 * m - 1))
        m += 1
    return _series_exp(arg, order)


def gamma_factor_phase(order: int):
    """Phase and amplitude of int_0^infty e^{(-x + nu ln x)/z} dln x,
    recentered at the critical point x = nu via x = nu(1 + y).

    The phase becomes (nu ln nu - nu) + nu (ln(1+y) - y), so
    sigma^2 = 1/nu and f_k = (-1)^{k+1} nu / k; the amplitude is
    dln x / dy = 1/(1+y).  nu is the formal parameter s.
    """
    from .algebra.scalar import ONE, S

    higher = {}
    for k in range(3, 2 * order + 3):
        higher[k] = S * Fraction((-1) ** (k + 1), k)
    phase = PhaseData(sigma_sq=ONE / S, higher=higher, critical_value="nu ln nu - nu")
    amp = AmplitudeData.from_x_coeffs(
        [Fraction((-1) ** m) for m in range(2 * order + 1)]
    )
    return phase, amp


def gamma_vs_stationary_phase(order: int) -> bool:
    """Exact agreement of the stationary-phase expansion of the Gamma
    integral with the Bernoulli-series expansion, through z^order."""
    from .algebra.scalar import S

    phase, amp = gamma_factor_phase(order)
    expansion = stationary_phase(phase, amp, order)
    reference = gamma_hat_series(order)
    for k in range(order + 1):
        # A_k should equal c_k nu^{-k}; compare A_k * nu^k with c_k
        lhs = expansion.coefficients[k] * S**k
        if not lhs == reference[k]:
            return False
    return True
