"""Exact scalar arithmetic and dense linear algebra.

Matrices are numpy arrays.  An array of dtype ``object`` holding ``int``,
``Fraction`` or :class:`GaussianRational` entries runs on the exact path:
ranks, kernels and determinants are decided without tolerances.  Any
float/complex array runs on the floating path, where decisions are made
relative to a tolerance scaled by the largest entry.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

import numpy as np

DEFAULT_TOL = 1e-9


class InternalError(RuntimeError):
    """An invariant that the mathematics guarantees was violated."""


class DimensionError(ValueError):
    pass


class GaussianRational:
    """Complex number with rational real and imaginary parts.

    Arithmetic results whose imaginary part vanishes are demoted to
    ``Fraction`` so purely real computations stay on the cheaper type.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return gaussian(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re + other.re, self.im + other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussianRational):
            return gaussian(self.re - other.re, self.im - other.im)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re - other, self.im)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other - self.re, -self.im)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            a, b, c, d = self.re, self.im, other.re, other.im
            return gaussian(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Fraction(0)
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussianRational):
            n = other.abs2()
            a, b, c, d = self.re, self.im, other.re, other.im
            return gaussian((a * c + b * d) / n, (b * c - a * d) / n)
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re / other, self.im / other)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            n = self.abs2()
            return gaussian(other * self.re / n, -other * self.im / n)
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        result, base = Fraction(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, complex):
            return complex(self) == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


Scalar = "int | Fraction | GaussianRational | complex"
I = GaussianRational(0, 1)


def gaussian(re, im=0):
    """Build an exact scalar, demoting to ``Fraction`` when ``im == 0``."""
    if im == 0:
        return Fraction(re)
    return GaussianRational(re, im)


def to_exact(x):
    """Convert ``x`` to an exact scalar.

    Floats convert to the dyadic rational they represent.  Strings such as
    ``"-3/4"`` are parsed by ``Fraction``.
    """
    if isinstance(x, GaussianRational):
        return x if x.im != 0 else x.re
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating, str)):
        return Fraction(x) if not isinstance(x, np.floating) else Fraction(float(x))
    if isinstance(x, (complex, np.complexfloating)):
        return gaussian(Fraction(float(x.real)), Fraction(float(x.imag)))
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


def is_exact_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, GaussianRational)) and not isinstance(x, bool)


def conj(x):
    return x.conjugate()


def abs2(x):
    if isinstance(x, GaussianRational):
        return x.abs2()
    if isinstance(x, (int, Fraction)):
        return Fraction(x) * x
    return abs(x) ** 2


# ---------------------------------------------------------------------------
# matrices

def matrix(rows) -> np.ndarray:
    """Exact matrix from nested rows of numbers (object dtype)."""
    arr = np.array(rows, dtype=object)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = to_exact(v)
    return out


def vector(values) -> np.ndarray:
    out = np.empty(len(values), dtype=object)
    for i, v in enumerate(values):
        out[i] = to_exact(v)
    return out


def zeros(rows: int, cols: int | None = None) -> np.ndarray:
    shape = (rows,) if cols is None else (rows, cols)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = Fraction(1)
    return out


def is_exact(M) -> bool:
    return isinstance(M, np.ndarray) and M.dtype == object


def as_float(M) -> np.ndarray:
    if is_exact(M):
        return np.array([complex(v) for v in M.ravel()], dtype=complex).reshape(M.shape)
    return np.asarray(M, dtype=complex)


def ctranspose(M: np.ndarray) -> np.ndarray:
    """Conjugate transpose (works on exact and float arrays)."""
    return np.conjugate(M).T


def is_zero(M, tol: float | None = None) -> bool:
    if is_exact(M):
        return all(not v for v in M.ravel())
    M = np.asarray(M)
    return M.size == 0 or float(np.max(np.abs(M))) <= (DEFAULT_TOL if tol is None else tol)


def max_abs(M) -> float:
    """Largest entry magnitude as a float (for reporting residuals)."""
    if M.size == 0:
        return 0.0
    return float(np.max(np.abs(as_float(M))))


def is_hermitian(M, tol: float | None = None) -> bool:
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    if is_exact(M):
        n = M.shape[0]
        return all(M[i, j] == conj(M[j, i]) for i in range(n) for j in range(i, n))
    tol = DEFAULT_TOL if tol is None else tol
    scale = max(1.0, max_abs(M))
    return max_abs(M - ctranspose(M)) <= tol * scale


def require_hermitian(M, name: str = "matrix", tol: float | None = None) -> None:
    if not is_hermitian(M, tol):
        raise ValueError(f"{name} is declared hermitian but is not")


def kron(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product: block (i, j) of the result is ``A[i, j] * B``."""
    p, q = A.shape
    r, s = B.shape
    exact = is_exact(A) or is_exact(B)
    out = zeros(p * r, q * s) if exact else np.zeros((p * r, q * s), dtype=np.result_type(A, B))
    for i in range(p):
        for j in range(q):
            a = A[i, j]
            if a:
                out[i * r:(i + 1) * r, j * s:(j + 1) * s] = a * B
    return out


def matpow(A: np.ndarray, k: int) -> np.ndarray:
    result = eye(A.shape[0]) if is_exact(A) else np.eye(A.shape[0], dtype=A.dtype)
    base = A
    while k:
        if k & 1:
            result = result @ base
        base = base @ base
        k >>= 1
    return result


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True, eq=False)
class Subspace:
    """Column span of ``basis`` inside a space of dimension ``ambient_dim``.

    ``ill_conditioned`` is only ever set on the floating path, when the
    rank decision that produced the basis had a small gap.
    """

    ambient_dim: int
    basis: np.ndarray
    ill_conditioned: bool = False

    def __post_init__(self):
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient_dim:
            raise DimensionError(
                f"basis shape {self.basis.shape} does not match ambient dim {self.ambient_dim}")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def exact(self) -> bool:
        return is_exact(self.basis)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, eye(n))

    @classmethod
    def zero(cls, n: int, exact: bool = True) -> "Subspace":
        return cls(n, zeros(n, 0) if exact else np.zeros((n, 0), dtype=complex))

    @classmethod
    def span(cls, vectors, ambient_dim: int | None = None) -> "Subspace":
        """Span of the given vectors (columns of a matrix or list of vectors)."""
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            M = vectors
        else:
            vectors = list(vectors)
            if not vectors:
                if ambient_dim is None:
                    raise ValueError("ambient_dim required for an empty span")
                return cls.zero(ambient_dim)
            M = np.column_stack(vectors)
        return column_space(M)

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates ``a`` with ``basis @ a == v``; raises if ``v`` is outside."""
        a = solve(self.basis, v)
        if a is None:
            raise ValueError("vector does not lie in the subspace")
        return a

    def contains(self, v: np.ndarray, tol: float | None = None) -> bool:
        if is_exact(self.basis) and is_exact(v):
            return solve(self.basis, v) is not None
        C = as_float(self.basis)
        v = as_float(v)
        if C.shape[1] == 0:
            return is_zero(v, tol)
        coef, *_ = np.linalg.lstsq(C, v, rcond=None)
        res = np.linalg.norm(C @ coef - v)
        return res <= (DEFAULT_TOL if tol is None else tol) * max(1.0, np.linalg.norm(v))


# ---------------------------------------------------------------------------
# exact elimination

def _rref_rows(rows: list[list], ncols: int):
    """In-place reduced row echelon form; returns pivot column list.

    Pivots are chosen by increasing column index, and within a column the
    first nonzero row, so the result is deterministic.
    """
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if prow[c] != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] = prow[j] * inv
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for j in range(c, ncols):
                        if prow[j]:
                            row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: np.ndarray):
    """Reduced row echelon form of an exact matrix and its pivot columns."""
    rows = [[to_exact(v) for v in row] for row in M]
    pivots = _rref_rows(rows, M.shape[1])
    out = zeros(*M.shape)
    for i, row in enumerate(rows):
        out[i, :] = row
    return out, pivots


def _float_rank(M: np.ndarray, tol: float):
    M = np.asarray(M, dtype=complex)
    if M.size == 0:
        return 0, np.eye(M.shape[1], dtype=complex), False
    _, s, vh = np.linalg.svd(M)
    scale = max(float(np.max(np.abs(M))), np.finfo(float).tiny)
    thresh = tol * scale * max(M.shape)
    rank = int(np.sum(s > thresh))
    accepted, rejected = s[:rank], s[rank:]
    ill = bool(rank and rejected.size and rejected[0] > 0
               and accepted[-1] / rejected[0] < 1e3)
    return rank, vh[rank:].conj().T, ill


def rank_kernel(M: np.ndarray, tol: float = DEFAULT_TOL):
    """Rank and kernel of ``M``.

    On the exact path the kernel basis is read off the reduced row echelon
    form: one vector per free column, with a 1 in that column.  On the
    floating path the kernel comes from the SVD and the returned subspace is
    flagged ``ill_conditioned`` when the smallest accepted singular value is
    within a factor 1e3 of the largest rejected one.
    """
    if M.ndim != 2:
        raise DimensionError("rank_kernel expects a 2-d array")
    nrows, ncols = M.shape
    if not is_exact(M):
        rank, K, ill = _float_rank(M, tol)
        return rank, Subspace(ncols, K, ill_conditioned=ill)
    R, pivots = rref(M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    K = zeros(ncols, len(free))
    for k, f in enumerate(free):
        K[f, k] = Fraction(1)
        for r, p in enumerate(pivots):
            v = R[r, f]
            if v:
                K[p, k] = -v
    return len(pivots), Subspace(ncols, K)


def rank(M: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    return rank_kernel(M, tol)[0]


def kernel(M: np.ndarray, tol: float = DEFAULT_TOL) -> Subspace:
    return rank_kernel(M, tol)[1]


def column_space(M: np.ndarray, tol: float = DEFAULT_TOL) -> Subspace:
    """Basis of the column span: the pivot columns of ``M`` itself."""
    if not is_exact(M):
        M = np.asarray(M, dtype=complex)
        if M.size == 0:
            return Subspace(M.shape[0], np.zeros((M.shape[0], 0), dtype=complex))
        u, s, _ = np.linalg.svd(M, full_matrices=False)
        scale = max(float(np.max(np.abs(M))), np.finfo(float).tiny)
        r = int(np.sum(s > tol * scale * max(M.shape)))
        return Subspace(M.shape[0], u[:, :r])
    _, pivots = rref(M)
    return Subspace(M.shape[0], M[:, pivots].copy())


def solve(A: np.ndarray, B: np.ndarray):
    """Exact solution ``X`` of ``A X = B`` with free variables set to zero.

    Returns ``None`` when the system is inconsistent.  ``B`` may be a
    vector or a matrix.
    """
    vec = B.ndim == 1
    Bm = B.reshape(-1, 1) if vec else B
    n, k = A.shape
    if Bm.shape[0] != n:
        raise DimensionError(f"solve: A has {n} rows, B has {Bm.shape[0]}")
    rows = [[to_exact(v) for v in A[i]] + [to_exact(v) for v in Bm[i]] for i in range(n)]
    pivots = [p for p in _rref_rows(rows, k + Bm.shape[1]) if p < k]
    r = len(pivots)
    for i in range(r, n):
        if any(rows[i][k:]):
            return None
    # a pivot landing in the B columns also means inconsistency; caught above
    X = zeros(k, Bm.shape[1])
    for i, p in enumerate(pivots):
        X[p, :] = rows[i][k:]
    return X.ravel() if vec else X


def inverse(A: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    if A.shape != (n, n):
        raise DimensionError("inverse of a non-square matrix")
    X = solve(A, eye(n))
    if X is None or rank(A) < n:
        raise ZeroDivisionError("matrix is singular")
    return X


# ---------------------------------------------------------------------------
# determinants

def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _bareiss_int(rows: list[list[int]]) -> int:
    n = len(rows)
    sign, prev = 1, 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if rows[i][k]), None)
            if swap is None:
                return 0
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pk = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            f = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - f * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * rows[n - 1][n - 1]


def _gdiv(a, b):
    """Exact division of Gaussian integers given as (re, im) pairs."""
    ar, ai = a
    br, bi = b
    n = br * br + bi * bi
    return ((ar * br + ai * bi) // n, (ai * br - ar * bi) // n)


def _bareiss_gauss(rows) -> tuple[int, int]:
    n = len(rows)
    sign, prev = 1, (1, 0)
    for k in range(n - 1):
        if rows[k][k] == (0, 0):
            swap = next((i for i in range(k + 1, n) if rows[i][k] != (0, 0)), None)
            if swap is None:
                return (0, 0)
            rows[k], rows[swap] = rows[swap], rows[k]
            sign = -sign
        pr, pi = rows[k][k]
        rk = rows[k]
        for i in range(k + 1, n):
            ri = rows[i]
            fr, fi = ri[k]
            for j in range(k + 1, n):
                ar, ai = ri[j]
                br, bi = rk[j]
                num = (ar * pr - ai * pi - (fr * br - fi * bi),
                       ar * pi + ai * pr - (fr * bi + fi * br))
                ri[j] = _gdiv(num, prev)
            ri[k] = (0, 0)
        prev = rows[k][k]
    d = rows[n - 1][n - 1]
    return (sign * d[0], sign * d[1])


def determinant(M: np.ndarray):
    """Determinant; fraction-free Bareiss elimination on the exact path.

    Entries are first scaled to (Gaussian) integers row by row, so every
    intermediate division in the elimination is an exact integer division.
    """
    n = M.shape[0]
    if M.shape != (n, n):
        raise DimensionError("determinant of a non-square matrix")
    if not is_exact(M):
        return complex(np.linalg.det(np.asarray(M, dtype=complex))) if n else 1.0
    if n == 0:
        return Fraction(1)
    complex_entries = any(isinstance(v, GaussianRational) for v in M.ravel())
    scale = Fraction(1)
    rows = []
    for row in M:
        den = 1
        for v in row:
            if isinstance(v, GaussianRational):
                den = _lcm(den, _lcm(v.re.denominator, v.im.denominator))
            else:
                den = _lcm(den, Fraction(v).denominator)
        scale *= den
        if complex_entries:
            rows.append([(int(v.re * den), int(v.im * den)) if isinstance(v, GaussianRational)
                         else (int(Fraction(v) * den), 0) for v in row])
        else:
            rows.append([int(Fraction(v) * den) for v in row])
    if complex_entries:
        re, im = _bareiss_gauss(rows)
        return gaussian(Fraction(re) / scale, Fraction(im) / scale)
    return Fraction(_bareiss_int(rows)) / scale


# ---------------------------------------------------------------------------
# restriction and projection

def _basis_of(C) -> np.ndarray:
    return C.basis if isinstance(C, Subspace) else C


def congruence_restrict(M: np.ndarray, C) -> np.ndarray:
    """Matrix of ``M`` in the coordinates of the subspace ``C``: ``C^H M C``."""
    B = _basis_of(C)
    if M.shape[0] != M.shape[1] or M.shape[1] != B.shape[0]:
        raise DimensionError(f"cannot restrict {M.shape} matrix to subspace of R^{B.shape[0]}")
    return ctranspose(B) @ M @ B


def orthogonal_projector(S) -> np.ndarray:
    """Orthogonal projector ``C (C^H C)^{-1} C^H`` onto the span of ``S``."""
    C = _basis_of(S)
    if C.shape[1] == 0:
        return zeros(C.shape[0], C.shape[0]) if is_exact(C) else np.zeros((C.shape[0],) * 2)
    G = ctranspose(C) @ C
    if is_exact(C):
        try:
            Ginv = inverse(G)
        except ZeroDivisionError:
            raise InternalError("singular Gram matrix: basis columns are dependent") from None
        return C @ Ginv @ ctranspose(C)
    return C @ np.linalg.solve(G, ctranspose(C))


def orthogonal_complement(S, within=None) -> Subspace:
    """Orthogonal complement of ``S`` inside ``within`` (default: whole space)."""
    C = _basis_of(S)
    n = C.shape[0]
    W = Subspace.full(n) if within is None else within
    if C.shape[1] == 0:
        return W
    coeffs = kernel(ctranspose(C) @ W.basis)
    return Subspace(n, W.basis @ coeffs.basis)


def intersect(S: Subspace, T: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space (exact)."""
    if S.ambient_dim != T.ambient_dim:
        raise DimensionError("ambient dimensions differ")
    if S.dim == 0 or T.dim == 0:
        return Subspace.zero(S.ambient_dim)
    K = kernel(np.hstack([S.basis, -T.basis]))
    if K.dim == 0:
        return Subspace.zero(S.ambient_dim)
    return column_space(S.basis @ K.basis[: S.dim, :])


# ---------------------------------------------------------------------------
# univariate helpers (coefficient lists, lowest degree first)

def interpolate(nodes, values) -> list:
    """Exact coefficients (low to high) of the polynomial through the nodes."""
    n = len(nodes)
    coef = list(values)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (nodes[i] - nodes[i - j])
    # Newton form -> monomial form
    out = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # out = out * (x - nodes[k]) + coef[k]
        shifted = [Fraction(0)] + out[:-1]
        out = [shifted[i] - nodes[k] * out[i] for i in range(n)]
        out[0] = out[0] + coef[k]
    return out


def linear_pencil_det(A: np.ndarray, B: np.ndarray) -> list:
    """Exact coefficients of ``t -> det(A + t B)`` (low to high, length m+1)."""
    m = A.shape[0]
    nodes = [Fraction(k) for k in range(m + 1)]
    values = [determinant(A + t * B) for t in nodes]
    return interpolate(nodes, values)


def pencil_det_poly(D0, D1, D2, fixed):
    """``x0 -> det(x0 D0 + x1 D1 - x2 D2)`` with ``(x1, x2)`` held fixed.

    Returned as a univariate ``MultiPoly`` in ``x0`` with exact coefficients,
    obtained from m+1 determinant evaluations and Lagrange interpolation.
    """
    from .poly import MultiPoly

    x1, x2 = (to_exact(v) for v in fixed)
    m = D0.shape[0]
    if not (D0.shape == D1.shape == D2.shape == (m, m)):
        raise DimensionError("pencil matrices must share one square shape")
    coeffs = linear_pencil_det(x1 * D1 - x2 * D2, D0)
    return MultiPoly.from_coeffs(coeffs)


def reduce_lcm(values) -> int:
    return reduce(_lcm, values, 1)


__all__ = [
    "DEFAULT_TOL", "GaussianRational", "I", "InternalError", "DimensionError", "Subspace",
    "gaussian", "to_exact", "is_exact_scalar", "conj", "abs2", "matrix", "vector", "zeros",
    "eye", "is_exact", "as_float", "ctranspose", "is_zero", "max_abs", "is_hermitian",
    "require_hermitian", "kron", "matpow", "rref", "rank_kernel", "rank", "kernel",
    "column_space", "solve", "inverse", "determinant", "congruence_restrict",
    "orthogonal_projector", "orthogonal_complement", "intersect", "interpolate",
    "linear_pencil_det", "pencil_det_poly",
]
