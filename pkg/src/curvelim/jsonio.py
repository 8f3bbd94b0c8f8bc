"""JSON encoding of exact scalars, matrices, polynomials and vessels.

Rationals are strings ``"a/b"`` (lowest terms, ``b > 0``), Gaussian
rationals ``{"re": "a/b", "im": "c/d"}``, floating complex numbers
``[re, im]``.  Matrices are nested row-major arrays and polynomials are
lists of ``{"exp": [...], "coeff": scalar}``.
"""
from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .curve import CurvePoint, DetRep
from .exact import GaussianRational, gaussian
from .poly import MultiPoly
from .vessel import RationalPair, Vessel

VESSEL_FIELDS = ("A1", "A2", "Phi", "sigma1", "sigma2", "gamma_in", "gamma_out")


class SchemaError(ValueError):
    """Input does not match the expected layout; ``path`` locates the problem."""

    def __init__(self, path: str, msg: str):
        super().__init__(f"{path}: {msg}")
        self.path = path


# ---------------------------------------------------------------------------
# encoding

def _rational(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def encode_scalar(x):
    if isinstance(x, GaussianRational):
        return {"re": _rational(x.re), "im": _rational(x.im)}
    if isinstance(x, bool):
        return x
    if isinstance(x, (int, np.integer)):
        return _rational(Fraction(int(x)))
    if isinstance(x, Fraction):
        return _rational(x)
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (float, np.floating)):
        return float(x)
    raise TypeError(f"cannot encode scalar {x!r}")


def encode_matrix(M: np.ndarray) -> list:
    M = np.asarray(M)
    if M.ndim == 1:
        return [encode_scalar(v) for v in M]
    return [[encode_scalar(v) for v in row] for row in M]


def encode_poly(p: MultiPoly) -> list:
    return [{"exp": list(e), "coeff": encode_scalar(c)} for e, c in p.items()]


def encode_detrep(dr: DetRep) -> dict:
    return {"D0": encode_matrix(dr.D0), "D1": encode_matrix(dr.D1), "D2": encode_matrix(dr.D2)}


def encode_vessel(V: Vessel) -> dict:
    return {f: encode_matrix(getattr(V, f)) for f in VESSEL_FIELDS}


def encode_rational_pair(rp: RationalPair) -> dict:
    return {"p0": encode_poly(rp.p0), "p1": encode_poly(rp.p1), "p2": encode_poly(rp.p2),
            "n": rp.n}


def encode_point(pt: CurvePoint) -> dict:
    return {"x": [encode_scalar(v) for v in pt.x], "kernel": encode_matrix(pt.kernel),
            "exact": pt.exact}


def dumps(obj) -> str:
    """Deterministic serialization (sorted keys, fixed indentation)."""
    return json.dumps(obj, sort_keys=True, indent=2)


# ---------------------------------------------------------------------------
# decoding

def decode_scalar(v, path: str = "$"):
    """Inverse of :func:`encode_scalar`; also accepts JSON integers."""
    try:
        if isinstance(v, bool):
            raise SchemaError(path, "boolean is not a scalar")
        if isinstance(v, int):
            return Fraction(v)
        if isinstance(v, str):
            return Fraction(v.strip())
        if isinstance(v, dict):
            if set(v) != {"re", "im"}:
                raise SchemaError(path, "Gaussian rational needs exactly 're' and 'im'")
            return gaussian(decode_scalar(v["re"], path + ".re"), decode_scalar(v["im"], path + ".im"))
        if isinstance(v, float):
            return v
        if isinstance(v, list) and len(v) == 2 and all(isinstance(t, (int, float)) for t in v):
            return complex(v[0], v[1])
    except (ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, SchemaError):
            raise
        raise SchemaError(path, f"bad scalar {v!r}") from None
    raise SchemaError(path, f"bad scalar {v!r}")


def decode_matrix(v, path: str = "$") -> np.ndarray:
    if not isinstance(v, list) or not all(isinstance(r, list) for r in v):
        raise SchemaError(path, "matrix must be a list of rows")
    if v and len({len(r) for r in v}) != 1:
        raise SchemaError(path, "rows have different lengths")
    ncols = len(v[0]) if v else 0
    M = np.empty((len(v), ncols), dtype=object)
    for i, row in enumerate(v):
        for j, x in enumerate(row):
            M[i, j] = decode_scalar(x, f"{path}[{i}][{j}]")
    return M


def decode_vector(v, path: str = "$") -> np.ndarray:
    if not isinstance(v, list):
        raise SchemaError(path, "vector must be a list")
    return np.array([decode_scalar(x, f"{path}[{i}]") for i, x in enumerate(v)], dtype=object)


def decode_poly(v, nvars: int | None = None, path: str = "$") -> MultiPoly:
    """Term list, or for one variable a plain coefficient list (lowest degree first)."""
    if not isinstance(v, list):
        raise SchemaError(path, "polynomial must be a list")
    if v and not isinstance(v[0], dict):
        if nvars not in (None, 1):
            raise SchemaError(path, "coefficient lists are only allowed for one variable")
        return MultiPoly.from_coeffs([decode_scalar(c, f"{path}[{k}]") for k, c in enumerate(v)])
    terms = {}
    for k, t in enumerate(v):
        if not isinstance(t, dict) or set(t) != {"exp", "coeff"}:
            raise SchemaError(f"{path}[{k}]", "term needs exactly 'exp' and 'coeff'")
        exp = t["exp"]
        if not isinstance(exp, list) or not all(isinstance(e, int) and e >= 0 for e in exp):
            raise SchemaError(f"{path}[{k}].exp", "exponents must be non-negative integers")
        if nvars is None:
            nvars = len(exp)
        if len(exp) != nvars:
            raise SchemaError(f"{path}[{k}].exp", f"expected {nvars} exponents")
        e = tuple(exp)
        terms[e] = terms.get(e, 0) + decode_scalar(t["coeff"], f"{path}[{k}].coeff")
    if nvars is None:
        raise SchemaError(path, "cannot infer the number of variables of an empty polynomial")
    return MultiPoly(nvars, terms)


def _field(obj, key, path):
    if not isinstance(obj, dict):
        raise SchemaError(path, "expected an object")
    if key not in obj:
        raise SchemaError(path, f"missing field '{key}'")
    return obj[key]


def decode_detrep(v, path: str = "$") -> DetRep:
    mats = [decode_matrix(_field(v, k, path), f"{path}.{k}") for k in ("D0", "D1", "D2")]
    try:
        return DetRep(*mats)
    except (ValueError, TypeError) as exc:
        raise SchemaError(path, str(exc)) from None


def decode_vessel(v, path: str = "$") -> Vessel:
    mats = {f: decode_matrix(_field(v, f, path), f"{path}.{f}") for f in VESSEL_FIELDS}
    h = mats["A1"].shape[0]
    if mats["Phi"].size == 0:
        mats["Phi"] = np.empty((mats["sigma1"].shape[0], h), dtype=object)
    try:
        return Vessel(**mats)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


def decode_rational_pair(v, path: str = "$") -> RationalPair:
    polys = [decode_poly(_field(v, k, path), 2, f"{path}.{k}") for k in ("p0", "p1", "p2")]
    n = _field(v, "n", path)
    if not isinstance(n, int) or n < 1:
        raise SchemaError(f"{path}.n", "n must be a positive integer")
    try:
        return RationalPair(*polys, n)
    except ValueError as exc:
        raise SchemaError(path, str(exc)) from None


__all__ = ["SchemaError", "encode_scalar", "encode_matrix", "encode_poly", "encode_detrep",
           "encode_vessel", "encode_rational_pair", "encode_point", "dumps", "decode_scalar",
           "decode_matrix", "decode_vector", "decode_poly", "decode_detrep", "decode_vessel",
           "decode_rational_pair"]
