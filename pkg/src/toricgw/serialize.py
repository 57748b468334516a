"""Canonical, byte-stable text dumps of series and reports.

Terms are sorted by degree index, then by divisor monomial, then by the
z-structure; scalars print as reduced fractions of integer-coefficient
polynomials.  Golden-file tests compare these dumps byte-exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra.base import BaseElement
from .algebra.scalar import Scalar, pstr
from .algebra.tpoly import TPolynomial
from .algebra.zrational import ZRationalFunction


def scalar_str(x: Scalar) -> str:
    if x.den == (Fraction(1),):
        return pstr(x.num)
    return "(%s)/(%s)" % (pstr(x.num), pstr(x.den))


def base_str(b: BaseElement) -> str:
    parts = []
    for i, c in enumerate(b.coeffs):
        if c.is_zero():
            continue
        head = "" if i == 0 else ("h*" if i == 1 else "h^%d*" % i)
        parts.append("%s(%s)" % (head, scalar_str(c)))
    return " + ".join(parts) if parts else "0"


def zrf_str(f: ZRationalFunction) -> str:
    if f.is_zero():
        return "0"
    num = "; ".join(
        "z^%d: %s" % (i, base_str(c)) for i, c in enumerate(f.num) if not c.is_zero()
    )
    out = "[" + num + "]"
    if f.zpow:
        out += " / z^%d" % f.zpow
    for w, m, mult in f.den:
        out += " / (%s + %d z)^%d" % (base_str(w), m, mult)
    return out


def tmono_str(mono, ctx) -> str:
    bits = [
        "%s^%d" % (v, e) if e > 1 else v
        for v, e in zip(ctx.vars, mono)
        if e
    ]
    return "*".join(bits) if bits else "1"


def restricted_str(r) -> str:
    """Canonical dump of a fixed-point restriction."""
    lines = ["point alpha=%s" % r.point.label()]
    for idx, tp in r.series:
        for mono in sorted(tp.terms):
            lines.append(
                "  %s | %s : %s"
                % (idx, tmono_str(mono, r.ctx), zrf_str(tp.terms[mono]))
            )
    return "\n".join(lines) + "\n"


def laurent_str(lp) -> str:
    return (
        " + ".join("z^%d*(%r)" % (p, lp.terms[p]) for p in lp.powers()) or "0"
    )


def ne_series_str(ne) -> str:
    lines = ["ring %s basis=%s" % (ne.ring.name, ne.ring.basis)]
    for idx, tp in ne.series:
        for mono in sorted(tp.terms):
            lines.append(
                "  %s | %s : %s"
                % (idx, tmono_str(mono, ne.ctx), laurent_str(tp.terms[mono]))
            )
    return "\n".join(lines) + "\n"


def fixed_points_str(spec) -> str:
    lines = []
    for p in spec.fixed_points():
        parts = []
        for i, w in enumerate(p.P):
            parts.append(
                "P%d = %s" % (i + 1, weight_str(w))
            )
        lines.append(
            "alpha=%s det=%+d %s euler=%s"
            % (p.label(), p.det, "; ".join(parts), base_str(p.euler()))
        )
    return "\n".join(lines) + "\n"


def weight_str(w) -> str:
    bits = []
    for j, a in enumerate(w.lam):
        if a:
            bits.append("%s*lam%d" % (a, j + 1) if a != 1 else "lam%d" % (j + 1))
    if w.h:
        bits.append("%s*h" % w.h if w.h != 1 else "h")
    return " + ".join(bits).replace("+ -", "- ") if bits else "0"


def edges_str(spec) -> str:
    from .toric import edges

    lines = []
    for e in sorted(edges(spec), key=lambda e: (e.alpha.alpha, e.beta.alpha)):
        lines.append(
            "%s j+=%d j-=%d chi=%s d=%s"
            % (e.label(), e.j_plus + 1, e.j_minus + 1, weight_str(e.chi), list(e.d))
        )
    return "\n".join(lines) + "\n"
