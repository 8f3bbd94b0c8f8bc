"""Exact determinant polynomials of linear matrix pencils, by interpolation."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exact import determinant, interpolate, is_exact
from .poly import MultiPoly, homogenize


def pencil_polynomial(C: np.ndarray, mats) -> MultiPoly:
    """``det(C + y1 M1 + ... + yk Mk)`` as an exact polynomial in ``k`` variables.

    The total degree is at most the matrix size ``d``; the polynomial is
    recovered from determinants on the tensor grid ``{0..d}^k`` by nested
    univariate interpolation.  Only ``k <= 2`` is needed here.
    """
    mats = list(mats)
    if not all(is_exact(M) for M in [C, *mats]):
        raise TypeError("pencil_polynomial needs exact matrices")
    k = len(mats)
    d = C.shape[0]
    nodes = [Fraction(i) for i in range(d + 1)]
    if d == 0:
        return MultiPoly.const(1, k)
    if k == 1:
        coeffs = interpolate(nodes, [determinant(C + t * mats[0]) for t in nodes])
        return MultiPoly(1, {(a,): c for a, c in enumerate(coeffs)})
    if k == 2:
        M1, M2 = mats
        # rows: y2 node; columns: coefficient of y1^a
        table = []
        for s in nodes:
            base = C + s * M2
            table.append(interpolate(nodes, [determinant(base + t * M1) for t in nodes]))
        terms = {}
        for a in range(d + 1):
            col = interpolate(nodes, [row[a] for row in table])
            for b, c in enumerate(col):
                if c and a + b <= d:
                    terms[(a, b)] = c
                elif c:
                    raise ArithmeticError("interpolated determinant exceeds its degree bound")
        return MultiPoly(2, terms)
    raise NotImplementedError("pencils in more than two parameters")


def homogeneous_pencil_polynomial(D0, D1, D2) -> MultiPoly:
    """``det(x0 D0 + x1 D1 - x2 D2)`` as a homogeneous trivariate polynomial."""
    m = D0.shape[0]
    return homogenize(pencil_polynomial(D0, [D1, -D2]), m)


__all__ = ["pencil_polynomial", "homogeneous_pencil_polynomial"]
