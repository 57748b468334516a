"""Toric fibration data model.

A smooth compact toric fiber is encoded by an integer K x N matrix m
and a chamber point omega: fixed points of the torus action are the
K-subsets alpha of columns whose cone contains omega in its interior
(and must be unimodular for a manifold).  The base is either a point or
a projective space P^r, with twist integers l_j describing the line
bundles the fiber is associated to.

Equivariant weights live on a generic line lambda_j = c_j * s, so a
Weight (rational lambda-linear form plus a multiple of the base
hyperplane class h) embeds into the coefficient ring as c*s + (h-part).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra.base import BaseElement
from .algebra.novikov import DegreeIndex
from .algebra.scalar import Scalar
from .errors import (
    NonRegularChamberError,
    SingularFixedPointError,
    SpecValidationError,
)

_DEFAULT_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


# ---------------------------------------------------------------------------
# exact linear algebra helpers (Fractions, tiny matrices)


def _solve(A, b):
    """Solve A x = b exactly by Gaussian elimination; A square invertible."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [b[i]] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        M[col], M[piv] = M[piv], M[col]
        inv = Fraction(1) / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [M[i][n] for i in range(n)]


def _det(A) -> Fraction:
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        det *= M[col][col]
        inv = Fraction(1) / M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return det


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Weight:
    """An equivariant degree-2 class: sum a_j lambda_j + (h-coefficient) h."""

    lam: tuple
    h: Fraction = Fraction(0)

    @staticmethod
    def zero(N: int) -> "Weight":
        return Weight((Fraction(0),) * N, Fraction(0))

    @staticmethod
    def unit_lambda(N: int, j: int, hcoeff=Fraction(0)) -> "Weight":
        lam = [Fraction(0)] * N
        lam[j] = Fraction(1)
        return Weight(tuple(lam), Fraction(hcoeff))

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a + b for a, b in zip(self.lam, other.lam)), self.h + other.h
        )

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(
            tuple(a - b for a, b in zip(self.lam, other.lam)), self.h - other.h
        )

    def __neg__(self) -> "Weight":
        return Weight(tuple(-a for a in self.lam), -self.h)

    def scale(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(tuple(a * c for a in self.lam), self.h * c)

    def is_zero(self) -> bool:
        return self.h == 0 and all(a == 0 for a in self.lam)

    def is_torically_nonzero(self) -> bool:
        return any(a != 0 for a in self.lam)

    def pair_base_degree(self, D: int) -> Fraction:
        """Value on a base curve class of degree D (h pairs to D)."""
        return self.h * D

    def lambda_value(self, c) -> Fraction:
        """Coefficient of s after restriction to the line lambda_j = c_j s."""
        return sum((a * cj for a, cj in zip(self.lam, c)), Fraction(0))


@dataclass(frozen=True)
class FixedPoint:
    alpha: tuple  # sorted K-subset of column indices (0-based)
    P: tuple  # K Weights solving sum_i P_i m_{ij} = Lambda_j, j in alpha
    det: int  # det of the K x K column submatrix, +-1
    spec: "ToricFibrationSpec"

    def __repr__(self):
        return "FixedPoint(alpha=%s)" % (tuple(i + 1 for i in self.alpha),)

    def label(self) -> str:
        return "{" + ",".join(str(i + 1) for i in self.alpha) + "}"

    def restricted_normal_weight(self, j: int) -> Weight:
        """alpha^* U_j = sum_i P^alpha_i m_{ij} - Lambda_j."""
        spec = self.spec
        w = Weight.zero(spec.N)
        for i in range(spec.K):
            w = w + self.P[i].scale(spec.m[i][j])
        return w - spec.Lambda(j)

    def normal_weights(self) -> dict:
        return {
            j: self.restricted_normal_weight(j)
            for j in range(self.spec.N)
            if j not in self.alpha
        }

    def euler(self) -> BaseElement:
        """Product of the normal weights, in the coefficient ring."""
        out = BaseElement.one(self.spec.width)
        for w in self.normal_weights().values():
            out = out * self.spec.weight_element(w)
        return out

    def P_of_D(self, D: int) -> tuple:
        """The fiber-degree shift of a lifted base class: integer vector."""
        out = []
        for w in self.P:
            v = w.pair_base_degree(D)
            if v.denominator != 1:
                raise SpecValidationError(
                    "non-integral section shift %s (alpha=%s)" % (v, self.label())
                )
            out.append(int(v))
        return tuple(out)

    def chamber_coordinates(self) -> list:
        """omega = sum_{j in alpha} x_j m_{.j}, all x_j > 0."""
        spec = self.spec
        A = [[spec.m[i][j] for j in self.alpha] for i in range(spec.K)]
        return _solve(A, list(spec.omega))

    def degree_from_box(self, u) -> tuple:
        """The d with U_j(d) = u_j for j in alpha (unimodular solve)."""
        spec = self.spec
        A = [[spec.m[i][j] for i in range(spec.K)] for j in self.alpha]
        sol = _solve(A, [Fraction(x) for x in u])
        if any(x.denominator != 1 for x in sol):
            raise SpecValidationError("non-integral degree for u=%s" % (u,))
        return tuple(int(x) for x in sol)

    def effective_range(self, cutoff) -> list:
        """Support indices: fiber degrees with U_j(d) >= 0 for j in alpha,
        shifted by the section lift, paired with base degrees, within the
        weighted-degree cutoff."""
        spec = self.spec
        cutoff = Fraction(cutoff)
        x = self.chamber_coordinates()
        out = []
        Dmax = int(cutoff) if spec.r >= 1 else 0
        for D in range(Dmax + 1):
            shift = self.P_of_D(D)
            wshift = sum(
                (w * v for w, v in zip(spec.omega, shift)), Fraction(D)
            )
            bound = cutoff - wshift
            for u in _boxes(x, bound):
                d = self.degree_from_box(u)
                idx = DegreeIndex(tuple(a + b for a, b in zip(d, shift)), D)
                out.append(idx)
        return sorted(out)


def _boxes(x, bound):
    """All nonnegative integer vectors u with sum x_j u_j <= bound."""
    if bound < 0:
        return
    if not x:
        yield ()
        return
    head = x[0]
    u0 = 0
    while head * u0 <= bound:
        for rest in _boxes(x[1:], bound - head * u0):
            yield (u0,) + rest
        u0 += 1


@dataclass(frozen=True)
class Edge:
    """Oriented 1-dimensional orbit alpha -> beta, |alpha ∪ beta| = K+1."""

    alpha: FixedPoint
    beta: FixedPoint
    j_plus: int  # in beta - alpha
    j_minus: int  # in alpha - beta
    chi: Weight  # alpha^* U_{j_plus}
    d: tuple  # orbit degree; orientation-independent

    def reversed(self) -> "Edge":
        return Edge(
            self.beta,
            self.alpha,
            self.j_minus,
            self.j_plus,
            self.beta.restricted_normal_weight(self.j_minus),
            self.d,
        )

    def label(self) -> str:
        return "%s->%s" % (self.alpha.label(), self.beta.label())


class ToricFibrationSpec:
    """Input geometry: fiber matrix and chamber, base choice, twists,
    and the generic lambda-line."""

    def __init__(self, K, N, m, omega, r=0, twists=None, c=None, name=""):
        self.K = int(K)
        self.N = int(N)
        self.m = tuple(tuple(int(x) for x in row) for row in m)
        self.omega = tuple(Fraction(x) for x in omega)
        self.r = int(r)  # 0 = point base, r >= 1 = P^r
        self.twists = tuple(int(x) for x in (twists or (0,) * self.N))
        if c is None:
            c = _DEFAULT_PRIMES[: self.N]
        self.c = tuple(Fraction(x) for x in c)
        self.name = name or "spec"
        self._validate()
        self._fixed_points = None

    # -- structure -----------------------------------------------------------

    @property
    def width(self) -> int:
        return self.r + 1

    def Lambda(self, j: int) -> Weight:
        """Equivariant first Chern class of the dual twisting bundle:
        lambda_j - l_j h."""
        return Weight.unit_lambda(self.N, j, hcoeff=-self.twists[j])

    def U_of_degree(self, j: int, d) -> int:
        """U_j paired with a fiber degree vector: sum_i d_i m_{ij}."""
        return sum(d[i] * self.m[i][j] for i in range(self.K))

    def weight_element(self, w: Weight) -> BaseElement:
        """Embed a Weight into the coefficient ring on the lambda-line."""
        coeffs = [Scalar.s_times(w.lambda_value(self.c))]
        for k in range(1, self.width):
            coeffs.append(
                Scalar.from_fraction(w.h) if k == 1 else Scalar.from_fraction(0)
            )
        return BaseElement(coeffs)

    def weighted_degree(self, idx: DegreeIndex) -> Fraction:
        return idx.weighted(self.omega)

    def with_lambda_line(self, c) -> "ToricFibrationSpec":
        return ToricFibrationSpec(
            self.K, self.N, self.m, self.omega, self.r, self.twists, c, self.name
        )

    def tvars(self) -> tuple:
        names = tuple("t%d" % (i + 1) for i in range(self.K)) + ("tau0",)
        if self.r >= 1:
            names = names + ("tau1",)
        return names

    # -- validation ------------------------------------------------------------

    def _validate(self):
        if not (0 < self.K < self.N):
            raise SpecValidationError("need 0 < K < N")
        if len(self.m) != self.K or any(len(row) != self.N for row in self.m):
            raise SpecValidationError("matrix shape must be K x N")
        if len(self.omega) != self.K:
            raise SpecValidationError("omega must have K entries")
        if len(self.twists) != self.N:
            raise SpecValidationError("twists must have N entries")
        if self.r == 0 and any(self.twists):
            raise SpecValidationError("twists require a projective base")
        if len(self.c) != self.N:
            raise SpecValidationError("lambda-line must have N entries")
        if any(x == 0 for x in self.c) or len(set(self.c)) != self.N:
            raise SpecValidationError(
                "lambda-line entries must be distinct and nonzero"
            )

    # -- fixed points ---------------------------------------------------------

    def fixed_points(self) -> list:
        if self._fixed_points is None:
            self._fixed_points = self._compute_fixed_points()
        return self._fixed_points

    def _compute_fixed_points(self) -> list:
        points = []
        used = set()
        for alpha in itertools.combinations(range(self.N), self.K):
            A = [[self.m[i][j] for j in alpha] for i in range(self.K)]
            det = _det(A)
            if det == 0:
                continue  # columns do not span: not a candidate cone
            x = _solve(A, list(self.omega))
            if any(v == 0 for v in x):
                raise NonRegularChamberError(
                    "omega lies on the boundary of cone %s" % (alpha,)
                )
            if any(v < 0 for v in x):
                continue  # omega outside this cone
            if abs(det) != 1:
                raise SingularFixedPointError(
                    "singular fixed point %s: orbifold case unsupported"
                    % (tuple(i + 1 for i in alpha),)
                )
            # solve sum_i P_i m_{ij} = Lambda_j for j in alpha, over Weights
            P = _solve_weights(self, alpha)
            points.append(FixedPoint(alpha, P, int(det), self))
            used.update(alpha)
        if not points:
            raise SpecValidationError("no fixed points: empty or non-compact")
        if used != set(range(self.N)):
            raise SpecValidationError(
                "columns %s lie in no fixed point: non-compact quotient"
                % sorted(set(range(self.N)) - used)
            )
        self._check_genericity(points)
        return points

    def _check_genericity(self, points):
        for p in points:
            vals = {}
            for j, w in p.normal_weights().items():
                v = w.lambda_value(self.c)
                if v == 0:
                    raise SpecValidationError(
                        "lambda-line kills normal weight U_%d at alpha=%s"
                        % (j + 1, p.label())
                    )
                if v in vals:
                    raise SpecValidationError(
                        "lambda-line identifies normal weights U_%d and U_%d "
                        "at alpha=%s; choose a different line"
                        % (vals[v] + 1, j + 1, p.label())
                    )
                vals[v] = j
        return points


def _solve_weights(spec: ToricFibrationSpec, alpha) -> tuple:
    """P^alpha from the unimodular system, as exact Weights."""
    A = [[spec.m[i][j] for i in range(spec.K)] for j in alpha]  # rows = j in alpha
    n = spec.K
    M = [[Fraction(A[r][i]) for i in range(n)] for r in range(n)]
    rhs = [spec.Lambda(j) for j in alpha]
    # Gaussian elimination with Weight-valued right-hand side
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        rhs[col], rhs[piv] = rhs[piv], rhs[col]
        inv = Fraction(1) / M[col][col]
        M[col] = [x * inv for x in M[col]]
        rhs[col] = rhs[col].scale(inv)
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
                rhs[r] = rhs[r] - rhs[col].scale(f)
    return tuple(rhs)


def fixed_points(spec: ToricFibrationSpec) -> list:
    return spec.fixed_points()


def edges(spec: ToricFibrationSpec, points=None) -> list:
    """All oriented 1-dimensional orbits; both orientations included."""
    if points is None:
        points = spec.fixed_points()
    out = []
    for a, b in itertools.permutations(points, 2):
        union = set(a.alpha) | set(b.alpha)
        if len(union) != spec.K + 1:
            continue
        j_plus = next(iter(set(b.alpha) - set(a.alpha)))
        j_minus = next(iter(set(a.alpha) - set(b.alpha)))
        chi = a.restricted_normal_weight(j_plus)
        # d solves U_j(d) = [j == j_minus] over j in alpha (unimodular)
        u = [1 if j == j_minus else 0 for j in a.alpha]
        d = a.degree_from_box(u)
        e = Edge(a, b, j_plus, j_minus, chi, d)
        _check_edge(spec, e)
        out.append(e)
    return out


def _check_edge(spec: ToricFibrationSpec, e: Edge):
    lhs = [pa - pb for pa, pb in zip(e.alpha.P, e.beta.P)]
    rhs = [e.chi.scale(di) for di in e.d]
    if lhs != rhs:
        raise SpecValidationError(
            "edge %s: (P^a - P^b) != chi * d; inconsistent spec" % e.label()
        )
    if spec.U_of_degree(e.j_plus, e.d) != 1 or spec.U_of_degree(e.j_minus, e.d) != 1:
        raise SpecValidationError("edge %s: U_{j+-}(d) != 1" % e.label())
    beta_chi = e.beta.restricted_normal_weight(e.j_minus)
    if e.chi + beta_chi != Weight.zero(spec.N):
        raise SpecValidationError("edge %s: chi != -beta^*U_{j-}" % e.label())


# ---------------------------------------------------------------------------
# push-forward along the fiber


def pushforward(spec: ToricFibrationSpec, f: dict) -> BaseElement:
    """Equivariant integral over the fiber of a polynomial class.

    ``f`` maps exponent tuples (length K, powers of P_1..P_K) to
    coefficient ring elements.  Returns
        sum_alpha det(m|alpha) f(P^alpha) / e^alpha,
    where the +-1 determinant implements the wedge-reordering sign.
    """
    out = BaseElement.zero(spec.width)
    for p in spec.fixed_points():
        Pel = [spec.weight_element(w) for w in p.P]
        val = BaseElement.zero(spec.width)
        for exps, coeff in f.items():
            term = coeff if isinstance(coeff, BaseElement) else BaseElement.scalar(
                coeff, spec.width
            )
            for i, e in enumerate(exps):
                for _ in range(e):
                    term = term * Pel[i]
            val = val + term
        out = out + val * p.euler().inv() * Fraction(p.det)
    return out


# -- independent route: iterated univariate residues -------------------------


class _LinForm:
    """c_1 P_1 + ... + c_K P_K + const, with rational variable coefficients
    and a coefficient-ring constant part."""

    __slots__ = ("coeffs", "const")

    def __init__(self, coeffs, const):
        self.coeffs = tuple(Fraction(x) for x in coeffs)
        self.const = const

    def substitute(self, var: int, root_coeffs, root_const) -> "_LinForm":
        c = self.coeffs[var]
        coeffs = [
            x + c * y if i != var else Fraction(0)
            for i, (x, y) in enumerate(zip(self.coeffs, root_coeffs))
        ]
        return _LinForm(coeffs, self.const + root_const * c)

    def is_zero_form(self) -> bool:
        return all(x == 0 for x in self.coeffs) and self.const.is_zero()


def _poly_substitute(f: dict, var: int, root_coeffs, root_const, width: int) -> dict:
    """Substitute P_var = sum root_coeffs_i P_i + root_const into f."""
    out: dict = {}
    for exps, coeff in f.items():
        e = exps[var]
        base = {exps[:var] + (0,) + exps[var + 1 :]: coeff}
        for _ in range(e):
            nxt: dict = {}
            for ex, cf in base.items():
                # multiply by the root linear form
                for i, rc in enumerate(root_coeffs):
                    if rc == 0:
                        continue
                    ex2 = ex[:i] + (ex[i] + 1,) + ex[i + 1 :]
                    v = cf * rc
                    nxt[ex2] = nxt[ex2] + v if ex2 in nxt else v
                if not root_const.is_zero():
                    v = cf * root_const
                    nxt[ex] = nxt[ex] + v if ex in nxt else v
            base = nxt
        for ex, cf in base.items():
            out[ex] = out[ex] + cf if ex in out else cf
    return {ex: cf for ex, cf in out.items() if not cf.is_zero()}


def pushforward_via_residues(spec: ToricFibrationSpec, f: dict) -> BaseElement:
    """Same integral as :func:`pushforward`, computed by iterated
    univariate residues of the K-form f dP_1...dP_K / (U_1...U_N).

    For each fixed point the variables P_K..P_1 are eliminated one at a
    time against the vanishing U_j, j in alpha; the permutation sign of
    the pairing restores the canonical wedge ordering.
    """
    width = spec.width
    total = BaseElement.zero(width)
    for p in spec.fixed_points():
        forms = []
        for j in range(spec.N):
            lam = spec.Lambda(j)
            forms.append(
                _LinForm(
                    [spec.m[i][j] for i in range(spec.K)],
                    -spec.weight_element(lam),
                )
            )
        num = {
            ex: (cf if isinstance(cf, BaseElement) else BaseElement.scalar(cf, width))
            for ex, cf in f.items()
        }
        alpha_sorted = list(p.alpha)
        remaining = dict(enumerate(forms))
        pairing = {}
        value_scale = BaseElement.one(width)
        for var in range(spec.K - 1, -1, -1):
            chosen = next(
                j
                for j in alpha_sorted
                if j in remaining and remaining[j].coeffs[var] != 0
            )
            pairing[var] = alpha_sorted.index(chosen)
            form = remaining.pop(chosen)
            c = form.coeffs[var]
            root_coeffs = [-x / c for x in form.coeffs]
            root_coeffs[var] = Fraction(0)
            root_const = -form.const / c
            value_scale = value_scale * Fraction(1) / c
            num = _poly_substitute(num, var, root_coeffs, root_const, width)
            remaining = {
                j: g.substitute(var, root_coeffs, root_const)
                for j, g in remaining.items()
            }
            for g in remaining.values():
                if g.is_zero_form():
                    raise SpecValidationError(
                        "degenerate pole at alpha=%s: non-simple intersection"
                        % p.label()
                    )
        res = num.get((0,) * spec.K, BaseElement.zero(width))
        for g in remaining.values():
            res = res * g.const.inv()
        sign = _permutation_sign([pairing[v] for v in range(spec.K)])
        total = total + res * value_scale * Fraction(sign)
    return total


def _permutation_sign(perm) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1
