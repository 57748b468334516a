"""Flat declarative geometry files.

Example::

    # the first Hirzebruch surface, bundle presentation
    K = 1
    N = 2
    m = 1 1
    omega = 1
    base = P1
    twists = 0 -1
    lambda_line = 2 23
    novikov = 2
    t_order = 2
    z_order = 6
    kmax = 2

Rows of ``m`` are separated by ``;``.  Rationals are written p/q.  No
expression language: every value is a literal.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import GeometryParseError
from .toric import ToricFibrationSpec

_KEYS = {
    "K", "N", "m", "omega", "base", "twists", "lambda_line",
    "novikov", "t_order", "z_order", "kmax", "name",
}

DEFAULT_CUTOFFS = {"novikov": Fraction(2), "t_order": 2, "z_order": 6, "kmax": 2}


def parse_geometry(text: str):
    """Parse a geometry file into (ToricFibrationSpec, cutoffs dict)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise GeometryParseError("expected 'key = value'", lineno)
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _KEYS:
            raise GeometryParseError("unknown key %r" % key, lineno)
        if key in values:
            raise GeometryParseError("duplicate key %r" % key, lineno)
        values[key] = (val, lineno)

    def need(key):
        if key not in values:
            raise GeometryParseError("missing key %r" % key)
        return values[key]

    def parse_int(key):
        val, lineno = need(key)
        try:
            return int(val)
        except ValueError:
            raise GeometryParseError("key %r: not an integer: %r" % (key, val), lineno)

    def parse_rat(val, lineno):
        try:
            return Fraction(val)
        except (ValueError, ZeroDivisionError):
            raise GeometryParseError("not a rational: %r" % val, lineno)

    def parse_vec(key, kind=int):
        val, lineno = need(key)
        out = []
        for tok in val.split():
            if kind is int:
                try:
                    out.append(int(tok))
                except ValueError:
                    raise GeometryParseError(
                        "key %r: not an integer: %r" % (key, tok), lineno
                    )
            else:
                out.append(parse_rat(tok, lineno))
        if not out:
            raise GeometryParseError("key %r: empty vector" % key, lineno)
        return out

    K = parse_int("K")
    N = parse_int("N")
    mval, mline = need("m")
    rows = []
    for rowtext in mval.split(";"):
        row = []
        for tok in rowtext.split():
            try:
                row.append(int(tok))
            except ValueError:
                raise GeometryParseError("matrix entry not an integer: %r" % tok, mline)
        if row:
            rows.append(row)
    if len(rows) != K or any(len(r) != N for r in rows):
        raise GeometryParseError("matrix must be K rows of N integers", mline)
    omega = parse_vec("omega", Fraction)
    baseval, baseline = values.get("base", ("point", 0))
    if baseval == "point":
        r = 0
    elif baseval.startswith("P") and baseval[1:].isdigit() and int(baseval[1:]) >= 1:
        r = int(baseval[1:])
    else:
        raise GeometryParseError(
            "base must be 'point' or 'P<r>', got %r" % baseval, baseline
        )
    twists = parse_vec("twists") if "twists" in values else None
    lam = parse_vec("lambda_line", Fraction) if "lambda_line" in values else None
    cutoffs = dict(DEFAULT_CUTOFFS)
    if "novikov" in values:
        val, lineno = values["novikov"]
        cutoffs["novikov"] = parse_rat(val, lineno)
        if cutoffs["novikov"] < 0:
            raise GeometryParseError("novikov cutoff must be >= 0", lineno)
    for key in ("t_order", "z_order", "kmax"):
        if key in values:
            cutoffs[key] = parse_int(key)
            if cutoffs[key] < 0 or (key == "kmax" and cutoffs[key] < 1):
                raise GeometryParseError("key %r out of range" % key, values[key][1])
    name = values.get("name", ("", 0))[0]
    spec = ToricFibrationSpec(K, N, rows, omega, r=r, twists=twists, c=lam, name=name)
    return spec, cutoffs


def load_geometry(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_geometry(fh.read())
