"""Finite-dimensional cohomology rings with monomial normal forms.

A ring is presented by generators (the tautological divisor classes,
plus the base hyperplane class for fibrations) and rewrite rules
head-monomial -> lower-order polynomial, derived from the vanishing
products of the invariant divisors.  Elements are Q-linear combinations
of normal-form monomials; everything is exact.

Laurent polynomials in z over such a ring are genuine finite objects:
1/(U + mz) has a terminating expansion because every ring generator is
nilpotent.  The non-equivariant series live here.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class CohomologyRing:
    def __init__(self, gens, relations, expected_dim=None, name=""):
        """``relations``: homogeneous polynomials (dicts exponent-tuple
        -> Fraction) that vanish in the ring.  Rewrite heads are the
        lex-largest top monomials under some generator ordering; the
        orderings are searched until every generator is capped by a
        pure-power head (Dickson finiteness) and, when given, the
        normal-monomial count matches ``expected_dim``."""
        self.gens = tuple(gens)
        self.name = name
        n = len(gens)
        for perm in itertools.permutations(range(n)):
            rewrites = {}
            for rel in relations:
                head, tail = _head_tail(rel, perm)
                if head in rewrites:
                    rewrites = None
                    break
                rewrites[head] = tail
            if rewrites is None:
                continue
            pure = [
                any(h[i] > 0 and sum(h) == h[i] for h in rewrites) for i in range(n)
            ]
            if not all(pure):
                continue
            basis = _normal_monomials(n, rewrites)
            if expected_dim is not None and len(basis) != expected_dim:
                continue
            self.rewrites = rewrites
            self.basis = basis
            self.dim = len(basis)
            return
        raise ValueError(
            "no generator ordering yields a finite confluent presentation"
        )

    def nilpotent_bound(self) -> int:
        """Every product of more than this many generators vanishes."""
        return max(sum(m) for m in self.basis) + 1

    # -- element constructors ------------------------------------------------

    def zero(self) -> "CElement":
        return CElement(self, {})

    def one(self) -> "CElement":
        return CElement(self, {(0,) * len(self.gens): Fraction(1)})

    def gen(self, i: int) -> "CElement":
        mono = [0] * len(self.gens)
        mono[i] = 1
        return CElement(self, {tuple(mono): Fraction(1)})

    def from_terms(self, terms: dict) -> "CElement":
        return CElement(self, dict(terms))

    def normalize(self, terms: dict) -> dict:
        out: dict = {}
        stack = list(terms.items())
        while stack:
            mono, coeff = stack.pop()
            if coeff == 0:
                continue
            head = next((h for h in self.rewrites if _divides(h, mono)), None)
            if head is None:
                out[mono] = out.get(mono, Fraction(0)) + coeff
                continue
            rest = tuple(a - b for a, b in zip(mono, head))
            for tmono, tcoeff in self.rewrites[head].items():
                stack.append(
                    (tuple(a + b for a, b in zip(tmono, rest)), coeff * tcoeff)
                )
        return {m: c for m, c in out.items() if c != 0}

    def degree_basis(self, degree: int) -> list:
        return [m for m in self.basis if sum(m) == degree]


class CElement:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: CohomologyRing, terms: dict):
        self.ring = ring
        self.terms = ring.normalize(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return CElement(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return CElement(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CElement(
                self.ring, {m: c * other for m, c in self.terms.items()}
            )
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
        return CElement(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def coefficient(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.one() * other
        return self.terms == other.terms

    __hash__ = None

    def key(self):
        return tuple(sorted(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono, c in sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0])):
            name = "*".join(
                "%s^%d" % (g, e) if e > 1 else g
                for g, e in zip(self.ring.gens, mono)
                if e
            )
            bits.append("%s%s" % (c, "*" + name if name else ""))
        return " + ".join(bits)


def _head_tail(rel: dict, perm):
    rel = {m: Fraction(c) for m, c in rel.items() if c != 0}
    top = max(sum(m) for m in rel)
    head = max(
        (m for m in rel if sum(m) == top),
        key=lambda m: tuple(m[i] for i in perm),
    )
    lead = rel[head]
    tail = {m: -c / lead for m, c in rel.items() if m != head}
    return head, tail


def _normal_monomials(n: int, rewrites: dict) -> list:
    caps = [0] * n
    for head in rewrites:
        for i, e in enumerate(head):
            caps[i] = max(caps[i], e)
    out = []
    for mono in itertools.product(*(range(max(1, c + 1)) for c in caps)):
        if not any(_divides(head, mono) for head in rewrites):
            out.append(mono)
    out.sort(key=lambda m: (sum(m), m))
    return out


def _divides(head, mono) -> bool:
    return all(a <= b for a, b in zip(head, mono))


# ---------------------------------------------------------------------------


class LaurentPolynomial:
    """Finite Laurent polynomial in z with CohomologyRing coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: CohomologyRing, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            for p, el in terms.items():
                if not el.is_zero():
                    self.terms[p] = el

    @staticmethod
    def const(el: CElement, power: int = 0) -> "LaurentPolynomial":
        return LaurentPolynomial(el.ring, {power: el})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, power: int) -> CElement:
        return self.terms.get(power, self.ring.zero())

    def powers(self):
        return sorted(self.terms)

    def __add__(self, other):
        out = dict(self.terms)
        for p, el in other.terms.items():
            out[p] = out[p] + el if p in out else el
        return LaurentPolynomial(self.ring, out)

    def __neg__(self):
        return LaurentPolynomial(self.ring, {p: -el for p, el in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CElement)):
            return LaurentPolynomial(
                self.ring, {p: el * other for p, el in self.terms.items()}
            )
        out: dict = {}
        for p, a in self.terms.items():
            for q, b in other.terms.items():
                v = a * b
                r = p + q
                out[r] = out[r] + v if r in out else v
        return LaurentPolynomial(self.ring, out)

    __rmul__ = __mul__

    def shifted(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial(self.ring, {p + k: el for p, el in self.terms.items()})

    def __eq__(self, other):
        keys = set(self.terms) | set(other.terms)
        return all(self.coefficient(p) == other.coefficient(p) for p in keys)

    __hash__ = None

    def __repr__(self):
        return " + ".join(
            "z^%d*(%r)" % (p, el) for p, el in sorted(self.terms.items())
        ) or "0"


def inverse_linear_factor(U: CElement, m: int) -> LaurentPolynomial:
    """1/(U + mz) = sum_{i=0}^{nilp} (-U)^i / (mz)^{i+1}, exact and finite."""
    ring = U.ring
    out = {}
    term = ring.one() * Fraction(1, m)
    for i in range(ring.nilpotent_bound() + 1):
        if term.is_zero():
            break
        out[-(i + 1)] = term
        term = term * U * Fraction(-1, m)
    return LaurentPolynomial(ring, out)


# -- ring constructions -------------------------------------------------------


def ring_from_point_spec(spec) -> CohomologyRing:
    """H^*(X; Q) for a point-base spec: generators P_1..P_K, relations
    prod_{j in S} U_j for the minimal subsets S meeting every fixed point."""
    if spec.r != 0:
        raise ValueError("point-base spec required")
    alphas = [set(p.alpha) for p in spec.fixed_points()]
    minimal = _minimal_noncovered(spec.N, alphas)
    gens = tuple("P%d" % (i + 1) for i in range(spec.K))
    relations = []
    for S in minimal:
        rel = {(0,) * spec.K: Fraction(1)}
        for j in S:
            rel = _poly_mul_linear(rel, [spec.m[i][j] for i in range(spec.K)])
        relations.append(rel)
    return CohomologyRing(gens, relations, expected_dim=len(alphas), name=spec.name)


def ring_from_bundle_spec(spec) -> CohomologyRing:
    """H^*(E; Q) for a K = 1 projective bundle over P^r:
    Q[P, h] / (prod_j (P - Lambda_j), h^{r+1})."""
    if spec.K != 1 or spec.r < 1:
        raise ValueError("K = 1 bundle over P^r required")
    rel = {(0, 0): Fraction(1)}
    for j in range(spec.N):
        # P - Lambda_j = P + l_j h
        rel = _poly_mul_general(rel, {(1, 0): Fraction(1), (0, 1): Fraction(spec.twists[j])})
    hrel = {(0, spec.r + 1): Fraction(1)}
    expected = len(spec.fixed_points()) * (spec.r + 1)
    return CohomologyRing(("P", "h"), [rel, hrel], expected_dim=expected, name=spec.name)


def _minimal_noncovered(N: int, alphas) -> list:
    """Minimal subsets S of columns such that no fixed point avoids S."""
    out = []
    for size in range(1, N + 1):
        for S in itertools.combinations(range(N), size):
            sset = set(S)
            if any(set(prev) <= sset for prev in out):
                continue
            if all(a & sset for a in alphas):
                out.append(S)
    return out


def _poly_mul_linear(poly: dict, coeffs) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        for i, a in enumerate(coeffs):
            if a == 0:
                continue
            m2 = mono[:i] + (mono[i] + 1,) + mono[i + 1 :]
            out[m2] = out.get(m2, Fraction(0)) + c * a
    return out


def _poly_mul_general(poly: dict, lin: dict) -> dict:
    out: dict = {}
    for mono, c in poly.items():
        for lm, a in lin.items():
            m2 = tuple(x + y for x, y in zip(mono, lm))
            out[m2] = out.get(m2, Fraction(0)) + c * a
    return out
