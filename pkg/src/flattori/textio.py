"""Shared exact-rational text format.

A matrix is one JSON object with fields `n` (rows), `m` (cols) and `entries`,
an array of arrays of strings; each string is an integer or `p/q` literal.
Non-reduced fractions are accepted and silently reduced; anything else is a
parse error.  Roots of unity serialize as the string `c/q`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .cohomology import AltFormModQ, AltFormZ, RootOfUnity
from .exact_linalg import IntMatrix, RatMatrix, SkewRatForm

_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


class MatrixFormatError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise MatrixFormatError(f"malformed rational literal: {text!r}")
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise MatrixFormatError(f"zero denominator in literal: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_matrix(obj) -> RatMatrix:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix object expected")
    try:
        rows = int(obj["n"])
        cols = int(obj["m"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise MatrixFormatError(f"matrix object needs n, m, entries: {exc}") from exc
    if (not isinstance(entries, list) or len(entries) != rows
            or any(not isinstance(r, list) or len(r) != cols for r in entries)):
        raise MatrixFormatError("entries shape does not match n x m")
    return RatMatrix([[parse_rational(x) for x in row] for row in entries])


def load_matrix(source: str) -> RatMatrix:
    """Parse a matrix from inline JSON (starts with '{') or from a file path."""
    text = source
    if not source.lstrip().startswith("{"):
        with open(source, "r", encoding="ascii") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"invalid JSON: {exc}") from exc
    return parse_matrix(obj)


def load_skew(source: str) -> SkewRatForm:
    m = load_matrix(source)
    try:
        return SkewRatForm(m)
    except ValueError as exc:
        raise MatrixFormatError(str(exc)) from exc


def dump_matrix(m) -> dict:
    if isinstance(m, IntMatrix):
        m = m.to_rat()
    if isinstance(m, SkewRatForm):
        m = m.mat
    return {
        "n": m.rows,
        "m": m.cols,
        "entries": [[format_rational(x) for x in row] for row in m.entries],
    }


def dump_altform(c: AltFormZ) -> dict:
    return dump_matrix(c.mat)


def dump_altform_modq(b: AltFormModQ) -> dict:
    out = dump_matrix(b.mat)
    out["modulus"] = b.modulus
    return out


def dump_vector_class(e) -> dict:
    return {"kind": "vector", "n": e.n, "q": e.rank, "form": dump_altform(e.c1)}


def dump_matrix_class(a) -> dict:
    return {"kind": "matrix", "n": a.n, "q": a.size,
            "form": dump_altform_modq(a.beta)}


def format_root(z: RootOfUnity) -> str:
    return str(z)
