"""Residue recursion verifier.

For every oriented 1-dimensional orbit alpha -> beta carrying a
multiplicity-k leg there is an exact identity between series
coefficients:

    Res_{z = -chi/k} J^alpha(z) d(kz)
        = q^{k d_{alpha,beta}} / Euler(N_{alpha,beta}(k)) * J^beta(-chi/k),

where the Euler class of the leg deformation bundle is

    Euler = prod_{m=1}^{k-1} (alpha^*U_{j+} - m chi/k)
            * prod_{j not in beta} prod_{m=1}^{k U_j(d_ab)} (alpha^*U_j - m chi/k).

The verifier checks the identity coefficient-by-coefficient (Novikov
index and divisor monomial), with exact equality.  When the shifted
index falls outside the effective support of J^beta, the left-hand
coefficient must have no pole at -chi/k, and that too is checked.
Checks whose alpha-side index would exceed the truncation cutoff are
reported as skipped, never silently passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.base import BaseElement
from .algebra.novikov import DegreeIndex
from .errors import SpecValidationError
from .toric import Edge, ToricFibrationSpec, edges


@dataclass(frozen=True)
class LegEulerClass:
    edge: Edge
    k: int
    value: BaseElement


def euler_leg(spec: ToricFibrationSpec, edge: Edge, k: int) -> LegEulerClass:
    """Exact Euler class of the multiplicity-k leg deformation bundle.

    Negative exponents k*U_j(d) move factors to the denominator, using
    the Gamma-ratio convention prod_{m=1}^{n} = 1/prod_{m=n+1}^{0}.
    """
    if k < 1:
        raise ValueError("leg multiplicity must be >= 1")
    width = spec.width
    chi_el = spec.weight_element(edge.chi)
    chik = chi_el * Fraction(1, k)
    aU = {j: spec.weight_element(edge.alpha.restricted_normal_weight(j))
          for j in range(spec.N) if j not in edge.alpha.alpha}
    aU.update({j: BaseElement.zero(width) for j in edge.alpha.alpha})
    value = BaseElement.one(width)
    for m in range(1, k):
        value = value * (aU[edge.j_plus] - chik * m)
    beta_set = set(edge.beta.alpha)
    for j in range(spec.N):
        if j in beta_set:
            continue
        n = k * spec.U_of_degree(j, edge.d)
        if n >= 0:
            for m in range(1, n + 1):
                value = value * _nonzero(aU[j] - chik * m, spec, edge, j, m)
        else:
            for m in range(n + 1, 1):
                value = value / _nonzero(aU[j] - chik * m, spec, edge, j, m)
    return LegEulerClass(edge, k, value)


def _nonzero(el: BaseElement, spec, edge, j, m) -> BaseElement:
    if not el.is_scalar_invertible():
        raise SpecValidationError(
            "vanishing Euler factor (alpha^*U_%d - %d chi/k) on edge %s; "
            "choose a different lambda-line" % (j + 1, m, edge.label())
        )
    return el


@dataclass
class CheckRecord:
    edge: str
    k: int
    index: DegreeIndex
    tmono: tuple
    kind: str  # "identity" | "no-pole"
    passed: bool


@dataclass
class RecursionReport:
    checked: int = 0
    passed: int = 0
    failed: int = 0
    skipped_cutoff: int = 0
    failures: list = field(default_factory=list)
    skipped: list = field(default_factory=list)
    records: list = field(default_factory=list)

    def record(self, rec: CheckRecord):
        self.checked += 1
        if rec.passed:
            self.passed += 1
        else:
            self.failed += 1
            self.failures.append(rec)
        self.records.append(rec)

    def skip(self, edge_label: str, k: int, index: DegreeIndex, reason: str):
        self.skipped_cutoff += 1
        self.skipped.append((edge_label, k, index, reason))

    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> str:
        return "checked %d, passed %d, failed %d, skipped %d (cutoff)" % (
            self.checked,
            self.passed,
            self.failed,
            self.skipped_cutoff,
        )


def verify_recursion(
    spec: ToricFibrationSpec, restricted: dict, kmax: int
) -> RecursionReport:
    """Check the residue identity on every oriented edge, multiplicity
    k <= kmax, Novikov index and divisor monomial within the cutoffs.

    ``restricted`` maps FixedPoint -> RestrictedIFunction (shared
    cutoffs).  The report counts each exact comparison once.
    """
    report = RecursionReport()
    some = next(iter(restricted.values()))
    cutoff = some.cutoff
    for r in restricted.values():
        if r.cutoff != cutoff or r.ctx != some.ctx:
            raise SpecValidationError("restricted series must share cutoffs")
    width = spec.width
    all_edges = edges(spec)
    for edge in all_edges:
        ja, jb = restricted[edge.alpha], restricted[edge.beta]
        chi_el = spec.weight_element(edge.chi)
        beta_support = set(jb.series.support())
        for k in range(1, kmax + 1):
            z0 = chi_el * Fraction(-1, k)
            euler = euler_leg(spec, edge, k).value
            euler_inv = euler.inv()
            shift = tuple(k * x for x in edge.d)
            for idx, tp in ja.series:
                target = DegreeIndex(
                    tuple(a - b for a, b in zip(idx.d, shift)), idx.D
                )
                if target in beta_support:
                    tp_b = jb.series.get(target)
                    for mono in sorted(set(tp.terms) | set(tp_b.terms)):
                        f = tp.terms.get(mono)
                        g = tp_b.terms.get(mono)
                        left = (
                            f.residue_at(z0) * k
                            if f is not None
                            else BaseElement.zero(width)
                        )
                        right = (
                            g.eval(z0) * euler_inv
                            if g is not None
                            else BaseElement.zero(width)
                        )
                        report.record(
                            CheckRecord(
                                edge.label(), k, idx, mono, "identity",
                                left == right,
                            )
                        )
                else:
                    # outside the effective support: the identity forces
                    # the left coefficient to be regular at -chi/k
                    for mono, f in tp:
                        left = f.residue_at(z0)
                        report.record(
                            CheckRecord(
                                edge.label(), k, idx, mono, "no-pole",
                                left.is_zero(),
                            )
                        )
            # completeness: beta-side coefficients whose alpha-side
            # counterpart lies beyond the cutoff cannot be tested
            for idx in beta_support:
                up = DegreeIndex(
                    tuple(a + b for a, b in zip(idx.d, shift)), idx.D
                )
                if spec.weighted_degree(up) > cutoff:
                    report.skip(edge.label(), k, idx, "cutoff")
    return report


def pole_inventory(spec: ToricFibrationSpec, restricted: dict) -> bool:
    """Every denominator factor of every coefficient must be of the form
    (alpha^*U_j + m z) with m >= 1, i.e. every finite pole sits at
    z = -chi/k for some adjacent edge orientation and k >= 1."""
    for point, r in restricted.items():
        normal_keys = {
            spec.weight_element(w).key()
            for w in point.normal_weights().values()
        }
        for _, tp in r.series:
            for _, f in tp:
                for w, m, _ in f.den:
                    if m < 1 or w.key() not in normal_keys:
                        return False
    return True
