"""Shipped example geometries.

The five standard targets used throughout the test-suite: the
projective line and plane, the product of two lines, and the first
Hirzebruch surface presented both ways (as a toric surface over a
point, and as the projectivization P(O + O(-1)) over a line).  The
toric Hirzebruch matrix is the canonical total-space presentation of
the bundle data, so the degree lattices match up as (D, d) <-> (d0, d1)
and the ring generators as h <-> P0, P <-> P1.
"""

from __future__ import annotations

from .toric import ToricFibrationSpec

#: generic lambda-lines, screened so that no two pole locations
#: -alpha^*U_j/m collide on any shipped geometry at the test cutoffs
#: (the naive first-odd-primes line fails this already for the plane:
#: with c = (3,5,7) the poles (lam2-lam1)/1 and (lam3-lam1)/2 coincide)
LAMBDA_LINES = [
    (2, 23, 7, 43),
    (17, 43, 3, 7),
    (23, 17, 2, 29),
]


def proj_line(c=None) -> ToricFibrationSpec:
    return ToricFibrationSpec(1, 2, [[1, 1]], [1], c=_cut(c, 2), name="P1")


def proj_plane(c=None) -> ToricFibrationSpec:
    return ToricFibrationSpec(1, 3, [[1, 1, 1]], [1], c=_cut(c, 3), name="P2")


def p1xp1(c=None) -> ToricFibrationSpec:
    return ToricFibrationSpec(
        2, 4, [[1, 1, 0, 0], [0, 0, 1, 1]], [1, 1], c=_cut(c, 4), name="P1xP1"
    )


def hirzebruch_toric(c=None) -> ToricFibrationSpec:
    """F1 as a toric surface: rows (base class P0, fiber class P1)."""
    return ToricFibrationSpec(
        2, 4, [[1, 1, 0, -1], [0, 0, 1, 1]], [1, 2], c=_cut(c, 4), name="F1-toric"
    )


def hirzebruch_bundle(c=None) -> ToricFibrationSpec:
    """F1 as P(O + O(-1)) over a P^1 base: fiber P^1, twists (0, -1)."""
    return ToricFibrationSpec(
        1, 2, [[1, 1]], [1], r=1, twists=[0, -1], c=_cut(c, 2), name="F1-bundle"
    )


def all_point_base(c=None) -> list:
    return [proj_line(c), proj_plane(c), p1xp1(c), hirzebruch_toric(c)]


def _cut(c, n):
    if c is None:
        c = LAMBDA_LINES[0]
    return tuple(c)[:n]
