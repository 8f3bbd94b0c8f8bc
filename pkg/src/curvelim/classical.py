"""Classical elimination for polynomials in one variable.

Bezout and Sylvester matrices, resultants, common-zero counts and the
determinantal representation of the image of the line under a rational map
``t -> (p1(t)/p0(t), p2(t)/p0(t))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import determinant, rank_kernel, zeros
from .poly import MultiPoly
from .detpoly import pencil_polynomial


class DegenerateMapError(ValueError):
    """The image determinant vanishes identically (basepoint or constant map)."""


def _univariate(p: MultiPoly, n: int, name: str) -> list:
    if p.nvars != 1:
        raise ValueError(f"{name} must be univariate")
    if p.degree() > n:
        raise ValueError(f"deg {name} = {p.degree()} exceeds n = {n}")
    c = p.coeffs() if not p.is_zero() else []
    return c + [Fraction(0)] * (n + 1 - len(c))


@dataclass(frozen=True, eq=False)
class BezoutMatrix:
    n: int
    entries: np.ndarray
    p: MultiPoly
    q: MultiPoly

    @property
    def kernel_dim(self) -> int:
        return self.n - rank_kernel(self.entries)[0]

    def det(self):
        return determinant(self.entries)


def bezout_matrix(p: MultiPoly, q: MultiPoly, n: int | None = None) -> BezoutMatrix:
    """Symmetric ``B`` with ``p(x)q(y) - q(x)p(y) = sum_ij B[i,j] x^i (x-y) y^j``.

    Both polynomials are padded to degree ``n``.  The coefficients of the
    bivariate numerator are divided by ``x - y`` with synthetic division in
    ``x`` (coefficients are polynomials in ``y``).
    """
    if n is None:
        n = max(p.degree(), q.degree(), 1)
    a = _univariate(p, n, "p")
    b = _univariate(q, n, "q")
    # c[i][j]: coefficient of x^i y^j in p(x)q(y) - q(x)p(y)
    c = [[a[i] * b[j] - b[i] * a[j] for j in range(n + 1)] for i in range(n + 1)]
    # quotient rows: B[i-1] = c[i] + y * B[i]
    B = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for i in range(n, 0, -1):
        above = B[i] if i < n else [Fraction(0)] * (n + 1)
        B[i - 1] = [c[i][j] + (above[j - 1] if j else 0) for j in range(n + 1)]
    remainder = [c[0][j] + (B[0][j - 1] if j else 0) for j in range(n + 1)]
    if any(remainder) or any(B[i][n] for i in range(n)):
        raise ArithmeticError("numerator is not divisible by x - y")
    M = zeros(n, n)
    for i in range(n):
        for j in range(n):
            M[i, j] = B[i][j]
    return BezoutMatrix(n, M, p, q)


def sylvester_matrix(p: MultiPoly, q: MultiPoly, n: int | None = None) -> np.ndarray:
    """``2n x 2n`` Sylvester matrix with both polynomials padded to degree ``n``."""
    if n is None:
        n = max(p.degree(), q.degree(), 1)
    a = _univariate(p, n, "p")[::-1]
    b = _univariate(q, n, "q")[::-1]
    S = zeros(2 * n, 2 * n)
    for r in range(n):
        S[r, r:r + n + 1] = a
        S[n + r, r:r + n + 1] = b
    return S


def sylvester_resultant(p: MultiPoly, q: MultiPoly, n: int | None = None):
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of the zero polynomial")
    return determinant(sylvester_matrix(p, q, n))


def common_zero_count_line(p: MultiPoly, q: MultiPoly, n: int | None = None) -> int:
    """Dimension of the kernel of the Bezout matrix."""
    return bezout_matrix(p, q, n).kernel_dim


@dataclass(frozen=True, eq=False)
class LineImage:
    b10: BezoutMatrix
    b20: BezoutMatrix
    b12: BezoutMatrix
    polynomial: MultiPoly

    def vanishes_at(self, t) -> bool:
        p0, p1, p2 = self.b10.q, self.b10.p, self.b20.p
        d = p0.evaluate((t,))
        if d == 0:
            raise ZeroDivisionError("p0 vanishes at the sample")
        return self.polynomial.evaluate((p1.evaluate((t,)) / d, p2.evaluate((t,)) / d)) == 0


def line_image_detrep(p0: MultiPoly, p1: MultiPoly, p2: MultiPoly, n: int | None = None) -> LineImage:
    """Determinantal representation of the image of the line.

    The image of ``t -> (p1/p0, p2/p0)`` lies in the zero set of
    ``det(y1 B(p2,p0) - y2 B(p1,p0) + B(p1,p2))``.
    """
    if p0.is_zero():
        raise ValueError("p0 must not vanish identically")
    if n is None:
        n = max(p0.degree(), p1.degree(), p2.degree(), 1)
    b10 = bezout_matrix(p1, p0, n)
    b20 = bezout_matrix(p2, p0, n)
    b12 = bezout_matrix(p1, p2, n)
    poly = pencil_polynomial(b12.entries, [b20.entries, -b10.entries])
    if poly.is_zero():
        raise DegenerateMapError("image determinant vanishes identically")
    return LineImage(b10, b20, b12, poly)


__all__ = ["BezoutMatrix", "LineImage", "DegenerateMapError", "bezout_matrix",
           "sylvester_matrix", "sylvester_resultant", "common_zero_count_line",
           "line_image_detrep"]
