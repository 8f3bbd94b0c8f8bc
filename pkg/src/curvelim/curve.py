"""Elimination theory along a plane curve with a determinantal representation.

The curve is ``det(x0 D0 + x1 D1 - x2 D2) = 0`` with hermitian ``D``'s.  The
blown-up space ``W_n`` has one block of size ``m`` per degree ``n-1``
monomial (order given by :class:`~curvelim.poly.MonomialIndex`), and a
vector of ``W_n`` is stored block-major: entry ``pos * m + r``.

Generalized Bezout matrices are assembled as

    B(p, q) = b12 (x) D0 + b20 (x) D1 + b10 (x) D2

where ``b10``, ``b20``, ``b12`` multiply the minors ``x1 y0 - x0 y1``,
``x2 y0 - x0 y2`` and ``x1 y2 - x2 y1`` in the decomposition of
``p(x)q(y) - q(x)p(y)``.  With this pairing ``h^T B V(x,e)`` reproduces the
numerator up to a scalar for every pair of curve points.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .classical import DegenerateMapError
from .detpoly import homogeneous_pencil_polynomial
from .exact import (DEFAULT_TOL, GaussianRational, InternalError, Subspace, as_float, congruence_restrict,
                    ctranspose, determinant, gaussian, intersect, is_exact, is_exact_scalar, is_hermitian,
                    kernel, kron, linear_pencil_det, matrix, rank_kernel, to_exact,
                    zeros)
from .poly import MonomialIndex, MultiPoly
from .roots import poly_roots

PAIRINGS = ("validated", "printed")


class InfeasibleError(ValueError):
    """The requested determinantal representation does not exist."""


# ---------------------------------------------------------------------------
# determinantal representations and points

@dataclass(frozen=True, eq=False)
class DetRep:
    """Hermitian triple with ``delta = det(x0 D0 + x1 D1 - x2 D2)``.

    Hermitianness is declared, so it is verified on construction; a triple
    whose determinant vanishes identically is rejected unless
    ``allow_degenerate`` is set.
    """

    D0: np.ndarray
    D1: np.ndarray
    D2: np.ndarray
    allow_degenerate: bool = False
    delta: MultiPoly = field(init=False)

    def __post_init__(self):
        m = self.D0.shape[0]
        for name in ("D0", "D1", "D2"):
            D = getattr(self, name)
            if D.shape != (m, m):
                raise ValueError(f"{name} has shape {D.shape}, expected {(m, m)}")
            if not is_exact(D):
                raise TypeError(f"{name} must be an exact matrix")
            if not is_hermitian(D):
                raise ValueError(f"{name} is not hermitian")
        delta = homogeneous_pencil_polynomial(self.D0, self.D1, self.D2)
        if delta.is_zero() and not self.allow_degenerate:
            raise InfeasibleError("determinant vanishes identically")
        object.__setattr__(self, "delta", delta)

    @property
    def m(self) -> int:
        return self.D0.shape[0]

    def matrix_at(self, x) -> np.ndarray:
        """``x0 D0 + x1 D1 - x2 D2``; exact for exact ``x``."""
        x0, x1, x2 = x
        if _is_exact_tuple(x):
            return x0 * self.D0 + x1 * self.D1 - x2 * self.D2
        D = [as_float(M) for M in (self.D0, self.D1, self.D2)]
        return complex(x0) * D[0] + complex(x1) * D[1] - complex(x2) * D[2]

    def is_real(self) -> bool:
        return all(not isinstance(v, GaussianRational) for D in (self.D0, self.D1, self.D2)
                   for v in D.ravel())


@dataclass(frozen=True, eq=False)
class CurvePoint:
    """Projective point on the curve with its kernel vectors.

    ``kernel`` has one column per kernel basis vector (more than one only at
    singular points); ``e`` is the first.
    """

    x: tuple
    kernel: np.ndarray
    exact: bool

    @property
    def e(self) -> np.ndarray:
        return self.kernel[:, 0]

    def as_float(self) -> tuple:
        return tuple(complex(v) for v in self.x)


def _is_exact_tuple(x) -> bool:
    return all(is_exact_scalar(v) for v in x)


def exact_point(dr: DetRep, x) -> CurvePoint:
    """Exact curve point at ``x``; raises if ``x`` is not on the curve."""
    x = tuple(to_exact(v) for v in x)
    _, K = rank_kernel(dr.matrix_at(x))
    if K.dim == 0:
        raise ValueError(f"{x} is not on the curve")
    return CurvePoint(x, K.basis, True)


def float_point(dr: DetRep, x, rel: float = 1e-6) -> CurvePoint:
    """Floating curve point; the kernel holds every singular vector below ``rel``."""
    x = tuple(complex(v) for v in x)
    M = dr.matrix_at(x)
    _, s, vh = np.linalg.svd(M)
    k = max(1, int(np.sum(s <= rel * max(s[0], np.finfo(float).tiny))))
    return CurvePoint(x, vh[-k:].conj().T, False)


def left_kernel_point(dr: DetRep, pt: CurvePoint) -> np.ndarray:
    """Vectors ``h`` with ``h^T M(x) = 0`` at the same point (one per column)."""
    M = dr.matrix_at(pt.x)
    if pt.exact:
        return kernel(M.T).basis
    _, s, vh = np.linalg.svd(M.T)
    k = pt.kernel.shape[1]
    return vh[-k:].conj().T


def _promote(r: complex, f: MultiPoly, max_den: int = 10 ** 6):
    """Exact root of ``f`` near ``r`` if a small-denominator candidate works."""
    re = Fraction(r.real).limit_denominator(max_den)
    cands = [re]
    if abs(r.imag) > 1e-7 * max(1.0, abs(r)):
        cands = [gaussian(re, Fraction(r.imag).limit_denominator(max_den))]
    for c in cands:
        if f.evaluate((c,)) == 0:
            return c
    return None


def line_points(dr: DetRep, a, b, tol: float = DEFAULT_TOL) -> list[CurvePoint]:
    """Curve points on the projective line through ``a`` and ``b``.

    Points are ``a + t b`` for the roots ``t`` of ``det(M(a) + t M(b))``; when
    that polynomial drops degree, ``b`` itself (the point at ``t = oo``) is
    on the curve and is included.  Rational roots become exact points.
    """
    a = tuple(to_exact(v) for v in a)
    b = tuple(to_exact(v) for v in b)
    coeffs = linear_pencil_det(dr.matrix_at(a), dr.matrix_at(b))
    f = MultiPoly.from_coeffs(coeffs)
    pts: list[CurvePoint] = []
    if f.is_zero():
        raise ValueError("the line lies on the curve")
    if f.degree() < dr.m:
        pts.append(exact_point(dr, b))
    if f.degree() >= 1:
        for r in poly_roots(f, tol):
            t = _promote(r, f)
            if t is not None:
                pts.append(exact_point(dr, tuple(ai + t * bi for ai, bi in zip(a, b))))
            else:
                x = tuple(complex(ai) + r * complex(bi) for ai, bi in zip(a, b))
                pts.append(float_point(dr, x))
    return _dedupe(pts)


def _dedupe(pts: list[CurvePoint]) -> list[CurvePoint]:
    out: list[CurvePoint] = []
    for p in pts:
        if p.exact and any(q.exact and q.x == p.x for q in out):
            continue
        out.append(p)
    return out


def pencil_points(dr: DetRep, x1, x2, tol: float = DEFAULT_TOL) -> list[CurvePoint]:
    """Points ``(x0, x1, x2)`` on the curve with ``x1, x2`` fixed.

    The point at infinity of this pencil, ``(1, 0, 0)``, is not included.
    """
    pts = line_points(dr, (0, x1, x2), (1, 0, 0), tol)
    out = []
    for p in pts:
        if p.exact and p.x == (1, 0, 0):
            continue
        # rescale a + t b = (t, x1, x2) is already in this form
        out.append(p)
    return out


def sample_curve_points(dr: DetRep, count: int, rng: np.random.Generator,
                        tol: float = DEFAULT_TOL, real_lines: bool = True,
                        smooth_only: bool = True, max_lines: int = 500) -> list[CurvePoint]:
    """At least ``count`` curve points on random lines with small integer data.

    With ``smooth_only`` points whose kernel has dimension above one are
    dropped; on a non-reduced curve every point is such a point, so the
    search gives up after ``max_lines`` lines.
    """
    pts: list[CurvePoint] = []
    for _ in range(max_lines):
        if len(pts) >= count:
            return pts
        a = tuple(int(v) for v in rng.integers(-5, 6, 3))
        b = tuple(int(v) for v in rng.integers(-5, 6, 3))
        if not real_lines:
            a = tuple(gaussian(v, int(w)) for v, w in zip(a, rng.integers(-3, 4, 3)))
        try:
            found = line_points(dr, a, b, tol)
        except ValueError:
            continue
        pts.extend(p for p in found if not smooth_only or p.kernel.shape[1] == 1)
    if len(pts) < count:
        raise InfeasibleError(f"found only {len(pts)} of {count} curve points")
    return pts


# ---------------------------------------------------------------------------
# blown-up space, Vandermonde vectors, principal subspace

def blown_dim(m: int, n: int) -> int:
    return m * n * (n + 1) // 2


def vandermonde_vector(x, e, n: int) -> np.ndarray:
    """``(x^i e)`` over degree ``n-1`` monomials, stacked block-major."""
    idx = MonomialIndex(n - 1)
    e = np.asarray(e)
    exact = is_exact(e) and _is_exact_tuple(x)
    blocks = []
    for mono in idx:
        if exact:
            c = Fraction(1)
            for xv, k in zip(x, mono):
                if k:
                    c = c * xv ** k
        else:
            c = complex(np.prod([complex(xv) ** k for xv, k in zip(x, mono)]))
        blocks.append(c * e if exact else c * as_float(e))
    return np.concatenate(blocks) if blocks else e[:0]


def point_vandermonde(pt: CurvePoint, n: int) -> np.ndarray:
    """Vandermonde vectors at a curve point, one column per kernel vector."""
    return np.column_stack([vandermonde_vector(pt.x, pt.kernel[:, k], n)
                            for k in range(pt.kernel.shape[1])])


def _shift_matrices(m: int, n: int, D: tuple) -> np.ndarray:
    """Constraint operator whose kernel is the principal subspace."""
    top = MonomialIndex(n - 1)
    low = MonomialIndex(n - 2)
    L = zeros(len(low) * m, len(top) * m)
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    for r, j in enumerate(low):
        for a, (u, Dk) in enumerate(zip(units, D)):
            c = top.position(tuple(ji + ui for ji, ui in zip(j, u)))
            L[r * m:(r + 1) * m, c * m:(c + 1) * m] = Dk
    return L


@dataclass(frozen=True, eq=False)
class PrincipalSubspace:
    n: int
    detrep: DetRep
    subspace: Subspace
    constraints: np.ndarray

    @property
    def dim(self) -> int:
        return self.subspace.dim

    @property
    def basis(self) -> np.ndarray:
        return self.subspace.basis

    @property
    def expected_dim(self) -> int:
        return self.n * self.detrep.m

    def contains(self, w: np.ndarray, tol: float = 1e-8) -> bool:
        if self.constraints.shape[0] == 0:
            return True
        if is_exact(w):
            return not any(self.constraints @ w)
        res = as_float(self.constraints) @ np.asarray(w, dtype=complex)
        return float(np.linalg.norm(res)) <= tol * max(1.0, float(np.linalg.norm(w)))


def principal_subspace(dr: DetRep, n: int) -> PrincipalSubspace:
    """Kernel of the shift constraints ``D0 w_{j+e0} + D1 w_{j+e1} - D2 w_{j+e2}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    m = dr.m
    if n == 1:
        return PrincipalSubspace(1, dr, Subspace.full(m), zeros(0, m))
    L = _shift_matrices(m, n, (dr.D0, dr.D1, -dr.D2))
    return PrincipalSubspace(n, dr, kernel(L), L)


# ---------------------------------------------------------------------------
# generalized Bezout matrices

_MINORS = {
    # generator -> ((x unit, y unit, sign), ...)
    "10": ((1, 0, 1), (0, 1, -1)),
    "20": ((2, 0, 1), (0, 2, -1)),
    "12": ((1, 2, 1), (2, 1, -1)),
}
_GEN_ORDER = ("10", "20", "12")


def _add_unit(mono: tuple, k: int) -> tuple:
    out = list(mono)
    out[k] += 1
    return tuple(out)


@lru_cache(maxsize=None)
def _decomposition_solver(n: int):
    """Row-reduced system for the symmetric decomposition at degree ``n``.

    Unknowns are the upper-triangular entries of b10, b20, b12 (in that
    order, then by monomial position); rows are monomial pairs ``x^a y^b``.
    Returns (transform T, pivots, rank, unknown list, row index).
    """
    top = MonomialIndex(n)
    low = MonomialIndex(n - 1)
    N = len(low)
    unknowns = [(g, i, j) for g in _GEN_ORDER for i in range(N) for j in range(i, N)]
    nrows = len(top) ** 2
    A = [[Fraction(0)] * len(unknowns) for _ in range(nrows)]
    for col, (g, i, j) in enumerate(unknowns):
        pairs = [(i, j)] if i == j else [(i, j), (j, i)]
        for (ii, jj) in pairs:
            for xu, yu, sign in _MINORS[g]:
                a = top.position(_add_unit(low[ii], xu))
                b = top.position(_add_unit(low[jj], yu))
                A[a * len(top) + b][col] += sign
    ncols = len(unknowns)
    rows = [A[r] + [Fraction(int(r == k)) for k in range(nrows)] for r in range(nrows)]
    from .exact import _rref_rows
    pivots = [p for p in _rref_rows(rows, ncols + nrows) if p < ncols]
    T = [row[ncols:] for row in rows]
    return T, pivots, unknowns, top, N


def _numerator_coefficients(p: MultiPoly, q: MultiPoly, top: MonomialIndex) -> list:
    N = len(top)
    f = [Fraction(0)] * (N * N)
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            f[top.position(a) * N + top.position(b)] += ca * cb
            f[top.position(b) * N + top.position(a)] -= ca * cb
    return f


def _check_homogeneous(p: MultiPoly, n: int, name: str):
    if p.nvars != 3 or not p.is_homogeneous(n) or p.degree() > n:
        raise ValueError(f"{name} must be a homogeneous trivariate polynomial of degree {n}")


def bezout_decomposition(p: MultiPoly, q: MultiPoly, n: int):
    """Symmetric (b10, b20, b12) with

        p(x)q(y) - q(x)p(y) = sum x^i [b10_ij (x1y0 - x0y1) + b20_ij (x2y0 - x0y2)
                                      + b12_ij (x1y2 - x2y1)] y^j.

    For ``n >= 2`` the solution is not unique; the one returned sets every
    free unknown of the row-reduced system to zero, so it is deterministic
    and linear in the numerator.
    """
    _check_homogeneous(p, n, "p")
    _check_homogeneous(q, n, "q")
    T, pivots, unknowns, top, N = _decomposition_solver(n)
    f = _numerator_coefficients(p, q, top)
    g = [sum((t * v for t, v in zip(row, f) if t and v), Fraction(0)) for row in T]
    if any(g[len(pivots):]):
        raise InternalError("decomposition system is inconsistent")
    betas = {name: zeros(N, N) for name in _GEN_ORDER}
    for r, col in enumerate(pivots):
        gname, i, j = unknowns[col]
        betas[gname][i, j] = g[r]
        betas[gname][j, i] = g[r]
    return betas["10"], betas["20"], betas["12"]


def decomposition_identity_holds(p: MultiPoly, q: MultiPoly, betas, n: int) -> bool:
    """Expand the decomposition in six variables and compare with the numerator."""
    x0, x1, x2, y0, y1, y2 = MultiPoly.variables(6)
    X, Y = (x0, x1, x2), (y0, y1, y2)
    lhs = p.substitute(X) * q.substitute(Y) - q.substitute(X) * p.substitute(Y)
    minors = (x1 * y0 - x0 * y1, x2 * y0 - x0 * y2, x1 * y2 - x2 * y1)
    low = MonomialIndex(n - 1)
    mono_x = [MultiPoly(6, {tuple(m) + (0, 0, 0): 1}) for m in low]
    mono_y = [MultiPoly(6, {(0, 0, 0) + tuple(m): 1}) for m in low]
    rhs = MultiPoly.zero(6)
    for beta, minor in zip(betas, minors):
        form = MultiPoly.zero(6)
        for i in range(len(low)):
            for j in range(len(low)):
                if beta[i, j]:
                    form = form + mono_x[i] * mono_y[j] * beta[i, j]
        rhs = rhs + form * minor
    return lhs == rhs


def assemble_blown(betas, dr: DetRep, pairing: str = "validated") -> np.ndarray:
    b10, b20, b12 = betas
    if pairing == "validated":
        return kron(b12, dr.D0) + kron(b20, dr.D1) + kron(b10, dr.D2)
    if pairing == "printed":
        return kron(b12, dr.D0) + kron(b10, dr.D1) + kron(b20, dr.D2)
    raise ValueError(f"unknown pairing {pairing!r}")


@dataclass(frozen=True, eq=False)
class GeneralizedBezout:
    n: int
    beta10: np.ndarray
    beta20: np.ndarray
    beta12: np.ndarray
    B: np.ndarray
    Bp: np.ndarray
    vn: PrincipalSubspace

    @property
    def kernel_dim(self) -> int:
        return self.Bp.shape[0] - rank_kernel(self.Bp)[0]

    def det(self):
        return determinant(self.Bp)


def curve_bezout(p: MultiPoly, q: MultiPoly, dr: DetRep, n: int,
                 vn: PrincipalSubspace | None = None,
                 pairing: str = "validated") -> GeneralizedBezout:
    """Blown Bezout matrix on ``W_n`` and its compression ``C^H B C`` to ``V_n``."""
    betas = bezout_decomposition(p, q, n)
    B = assemble_blown(betas, dr, pairing)
    vn = principal_subspace(dr, n) if vn is None else vn
    Bp = congruence_restrict(B, vn.subspace)
    return GeneralizedBezout(n, *betas, B, Bp, vn)


def curve_common_zero_count(p: MultiPoly, q: MultiPoly, dr: DetRep, n: int,
                            vn: PrincipalSubspace | None = None) -> int:
    return curve_bezout(p, q, dr, n, vn).kernel_dim


# ---------------------------------------------------------------------------
# bilinear identity along the curve

@dataclass
class BilinearReport:
    pairs: int = 0
    skipped: int = 0
    max_identity_error: float = 0.0
    vanishing_mismatches: int = 0
    details: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.vanishing_mismatches == 0 and self.max_identity_error < 1e-8


def _float_coords(C: np.ndarray, w: np.ndarray) -> np.ndarray:
    coef, *_ = np.linalg.lstsq(C, w, rcond=None)
    return coef


def bilinear_vanishing_check(p: MultiPoly, q: MultiPoly, dr: DetRep, n: int, samples: int = 20,
                             rng: np.random.Generator | None = None,
                             tol: float = 1e-8, points=None) -> BilinearReport:
    """Check ``V_L(y)^T B' V(x) = c (p(x)q(y) - q(x)p(y))`` on curve point pairs.

    ``V_L(y)`` is built from a left kernel vector ``h`` (``h^T M(y) = 0``).
    The scalar ``c`` comes from ``(h^T D0 e, h^T D1 e, h^T D2 e)``, which is
    proportional to the cross product of ``x`` and ``y``; pairs where that
    cross product or vector is negligible are skipped.  Both the identity and
    the vanishing correspondence (left side zero exactly when the numerator
    is zero) are checked.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    gb = curve_bezout(p, q, dr, n)
    C = as_float(gb.vn.basis)
    Cbar = np.conj(C)
    Bp = as_float(gb.Bp)
    D = [as_float(M) for M in (dr.D0, dr.D1, dr.D2)]
    pts = list(points) if points is not None else sample_curve_points(dr, samples, rng)
    report = BilinearReport()
    pf = lambda P, z: complex(P.evaluate(z))  # noqa: E731
    npts = len(pts)
    pairs = {(k, (k + s) % npts) for k in range(npts) for s in (1, 2) if (k + s) % npts != k}
    for k, l in sorted(pairs):
        X, Y = pts[k], pts[l]
        x, y = X.as_float(), Y.as_float()
        e = as_float(X.e)
        h = as_float(left_kernel_point(dr, Y)[:, 0])
        vx = vandermonde_vector(x, e, n)
        vy = vandermonde_vector(y, h, n)
        ax = _float_coords(C, vx)
        by = _float_coords(Cbar, vy)
        lhs = by @ Bp @ ax
        num = pf(p, x) * pf(q, y) - pf(q, x) * pf(p, y)
        scale = np.linalg.norm(Bp) * np.linalg.norm(ax) * np.linalg.norm(by)
        pscale = _poly_scale(p, x) * _poly_scale(q, y) + _poly_scale(q, x) * _poly_scale(p, y)
        report.pairs += 1
        minors = np.array([x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2],
                           x[1] * y[0] - x[0] * y[1]])
        a = np.array([h @ Dk @ e for Dk in D])
        if np.linalg.norm(minors) <= 1e-6 * np.linalg.norm(x) * np.linalg.norm(y) \
                or np.linalg.norm(a) <= 1e-10 * np.linalg.norm(h) * np.linalg.norm(e):
            report.skipped += 1
            continue
        # with c != 0 the left side vanishes exactly when the numerator does
        if (abs(lhs) <= tol * scale) != (abs(num) <= tol * pscale):
            report.vanishing_mismatches += 1
        c = np.vdot(minors, a) / np.vdot(minors, minors)
        err = abs(lhs - c * num) / max(scale, abs(c) * pscale)
        report.max_identity_error = max(report.max_identity_error, float(err))
        report.details.append((k, l, complex(lhs), complex(c * num)))
    return report


def _poly_scale(p: MultiPoly, x) -> float:
    return sum(abs(complex(c)) * float(np.prod([abs(complex(v)) ** k for v, k in zip(x, e)]))
               for e, c in p.terms.items())


def relative_value(p: MultiPoly, x) -> float:
    """``|p(x)|`` divided by the sum of absolute term values at ``x``."""
    s = _poly_scale(p, x)
    return abs(complex(p.evaluate(tuple(complex(v) for v in x)))) / s if s else 0.0


def vandermonde_rank(pts, n: int, tol: float = 1e-6) -> int:
    """Numerical rank of the Vandermonde vectors of the given points."""
    V = np.column_stack([as_float(vandermonde_vector(p.x, p.e, n)) for p in pts])
    s = np.linalg.svd(V, compute_uv=False)
    return int(np.sum(s > tol * s[0]))


# ---------------------------------------------------------------------------
# basepoints and image curves

def _locate_points(K_W: np.ndarray, dr: DetRep, n: int, polys) -> list[CurvePoint]:
    """Curve points whose Vandermonde vectors span ``K_W`` (columns in ``W_n``).

    For ``n >= 2`` the shift operators ``T_a`` (block ``j`` -> block ``j + e_a``)
    satisfy ``T_a V(y) = y_a U(y)``, so the ratios ``y_a / l(y)`` are joint
    eigenvalues of ``(T_l K)^+ (T_a K)``.  Points found in floating point are
    promoted to exact ones when small-denominator candidates satisfy the
    curve and all ``polys`` exactly.
    """
    k = K_W.shape[1]
    if k == 0:
        return []
    m = dr.m
    if n == 1:
        rows = [[P.coeff(u) for u in ((1, 0, 0), (0, 1, 0), (0, 0, 1))] for P in polys]
        ker = kernel(matrix(rows))
        pts = []
        for c in range(ker.dim):
            y = tuple(ker.basis[:, c])
            try:
                pts.append(exact_point(dr, y))
            except ValueError:
                pass
        return pts
    top = MonomialIndex(n - 1)
    low = MonomialIndex(n - 2)
    Kf = as_float(K_W)
    units = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def shifted(u):
        rows = []
        for j in low:
            c = top.position(tuple(a + b for a, b in zip(j, u)))
            rows.append(Kf[c * m:(c + 1) * m, :])
        return np.vstack(rows)

    S = [shifted(u) for u in units]
    rng = np.random.default_rng(12345)
    lc = rng.normal(size=3) + 1j * rng.normal(size=3)
    Sl = sum(c * Sa for c, Sa in zip(lc, S))
    X = [np.linalg.lstsq(Sl, Sa, rcond=None)[0] for Sa in S]
    mix = rng.normal(size=3)
    _, vecs = np.linalg.eig(sum(c * Xa for c, Xa in zip(mix, X)))
    pts = []
    for col in range(k):
        v = vecs[:, col]
        y = np.array([np.vdot(v, Xa @ v) / np.vdot(v, v) for Xa in X])
        y = y / y[np.argmax(np.abs(y))]
        w = Kf @ v
        a = int(np.argmax(np.abs(y)))
        block = top.position(tuple((n - 1) * int(t == a) for t in range(3)))
        e = w[block * m:(block + 1) * m] / y[a] ** (n - 1)
        e = e / np.linalg.norm(e)
        exact = _promote_point(dr, y, polys)
        pts.append(exact if exact is not None else CurvePoint(tuple(y), e.reshape(-1, 1), False))
    return pts


def _promote_point(dr: DetRep, y, polys, max_den: int = 10 ** 4):
    a = int(np.argmax(np.abs(y)))
    cand = []
    for v in y / y[a]:
        re = Fraction(float(v.real)).limit_denominator(max_den)
        im = Fraction(float(v.imag)).limit_denominator(max_den)
        cand.append(gaussian(re, im))
    cand = tuple(cand)
    if dr.delta.evaluate(cand) != 0 or any(P.evaluate(cand) != 0 for P in polys):
        return None
    return exact_point(dr, cand)


@dataclass(frozen=True, eq=False)
class BasepointReduction:
    basepoints: list
    vbar: Subspace
    common: Subspace          # span of basepoint Vandermonde vectors, in W_n
    vn: PrincipalSubspace
    bezouts: dict             # (i, j) -> GeneralizedBezout of (p_i, p_j)

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.basepoints)


def basepoint_reduce(p0: MultiPoly, p1: MultiPoly, p2: MultiPoly, dr: DetRep, n: int,
                     vn: PrincipalSubspace | None = None) -> BasepointReduction:
    """Remove the Vandermonde vectors of basepoints from the principal subspace.

    The span of ``V_n(y)`` over common zeros ``y`` of all three polynomials is
    the intersection of the kernels of the three Bezout matrices along the
    curve, computed exactly.  ``vbar`` is its orthogonal complement inside
    ``V_n``.  The basepoints themselves are then located from that span.
    """
    polys = (p0, p1, p2)
    for k, P in enumerate(polys):
        _check_homogeneous(P, n, f"p{k}")
    vn = principal_subspace(dr, n) if vn is None else vn
    bez = {(i, j): curve_bezout(polys[i], polys[j], dr, n, vn)
           for (i, j) in ((1, 2), (2, 0), (1, 0))}
    common = Subspace.full(vn.dim)
    for gb in bez.values():
        common = intersect(common, kernel(gb.Bp))
        if common.dim == 0:
            break
    K_W = vn.basis @ common.basis
    common_W = Subspace(vn.basis.shape[0], K_W)
    if common.dim == 0:
        vbar = vn.subspace
    else:
        coeffs = kernel(ctranspose(K_W) @ vn.basis)
        vbar = Subspace(vn.basis.shape[0], vn.basis @ coeffs.basis)
    pts = _locate_points(K_W, dr, n, polys)
    return BasepointReduction(pts, vbar, common_W, vn, bez)


@dataclass(frozen=True, eq=False)
class ImageCurve:
    """``det(x0 E0 + x1 E1 - x2 E2)`` with E0 = B(p1,p2), E1 = B(p2,p0), E2 = B(p1,p0)."""

    E0: np.ndarray
    E1: np.ndarray
    E2: np.ndarray
    polynomial: MultiPoly
    reduction: BasepointReduction

    @property
    def degree(self) -> int:
        return self.polynomial.degree()

    @property
    def basepoints(self):
        return self.reduction.basepoints

    def residual(self, z) -> float:
        return relative_value(self.polynomial, z)


def image_detrep(p0: MultiPoly, p1: MultiPoly, p2: MultiPoly, dr: DetRep, n: int) -> ImageCurve:
    """Determinantal representation of the image curve of ``x -> (p0 : p1 : p2)``."""
    red = basepoint_reduce(p0, p1, p2, dr, n)
    E = [congruence_restrict(red.bezouts[key].B, red.vbar) for key in ((1, 2), (2, 0), (1, 0))]
    poly = homogeneous_pencil_polynomial(*E)
    if poly.is_zero():
        raise DegenerateMapError("image determinant vanishes identically after basepoint reduction")
    return ImageCurve(*E, poly, red)


def image_residuals(img: ImageCurve, polys, pts) -> list[float]:
    out = []
    for pt in pts:
        x = pt.as_float()
        z = tuple(complex(P.evaluate(x)) for P in polys)
        out.append(img.residual(z))
    return out


# ---------------------------------------------------------------------------
# fixture generation

def _hermitian_basis(m: int, field: str):
    """Unit hermitian matrices spanning the real space of hermitian (or symmetric) matrices."""
    units = []
    for i in range(m):
        for j in range(i, m):
            E = zeros(m, m)
            E[i, j] = E[j, i] = Fraction(1)
            units.append(E)
            if field == "complex" and i != j:
                F = zeros(m, m)
                F[i, j] = gaussian(0, 1)
                F[j, i] = gaussian(0, -1)
                units.append(F)
    return units


def _real_rows(values) -> list[list]:
    """Split complex linear equations into real and imaginary rows."""
    values = [to_exact(v) for v in values]
    re = [Fraction(v.real) for v in values]
    im = [Fraction(v.imag) for v in values]
    return [re, im] if any(im) else [re]


def hermitian_solution_space(constraints, m: int, field: str = "real"):
    """Real basis of the D-triples satisfying linear point constraints.

    ``constraints`` is a list of callables ``f(D0, D1, D2) -> exact vector``
    that are linear over the reals; returns a list of (D0, D1, D2) triples.
    """
    units = _hermitian_basis(m, field)
    nu = len(units)
    params = []
    for k in range(3):
        for U in units:
            D = [zeros(m, m) for _ in range(3)]
            D[k] = U
            params.append(tuple(D))
    rows: list[list] = []
    for con in constraints:
        cols = [con(*D) for D in params]
        for r in range(len(cols[0])):
            vals = [to_exact(c[r]) for c in cols]
            rows.extend(_real_rows(vals))
    if rows:
        K = kernel(matrix(rows))
        basis = K.basis
    else:
        basis = np.array([[Fraction(int(i == j)) for j in range(3 * nu)] for i in range(3 * nu)],
                         dtype=object)
    triples = []
    for c in range(basis.shape[1]):
        D = [zeros(m, m) for _ in range(3)]
        for idx in range(3 * nu):
            w = basis[idx, c]
            if w:
                D[idx // nu] = D[idx // nu] + w * units[idx % nu]
        triples.append(tuple(D))
    return triples


def point_constraint(x, e):
    x = tuple(to_exact(v) for v in x)
    e = np.array([to_exact(v) for v in e], dtype=object)
    return lambda D0, D1, D2: (x[0] * D0 + x[1] * D1 - x[2] * D2) @ e


def sample_detrep(triples, m: int, rng: np.random.Generator, attempts: int = 20,
                  low: int = -3, high: int = 3) -> DetRep:
    """Random integer combination of ``triples`` with a nonzero determinant."""
    if not triples:
        raise InfeasibleError("constraint system has only the zero solution")
    for _ in range(attempts):
        w = rng.integers(low, high + 1, len(triples))
        if not w.any():
            continue
        D = [zeros(m, m) for _ in range(3)]
        for wk, T in zip(w, triples):
            if wk:
                for k in range(3):
                    D[k] = D[k] + int(wk) * T[k]
        try:
            return DetRep(*D)
        except InfeasibleError:
            continue
    raise InfeasibleError(f"all {attempts} sampled solutions have identically zero determinant")


def detrep_through_points(points, m: int, rng: np.random.Generator | None = None,
                          field: str = "real") -> DetRep:
    """Random hermitian triple whose pencil kills ``e`` at ``x`` for every ``(x, e)``."""
    rng = np.random.default_rng(0) if rng is None else rng
    cons = [point_constraint(x, e) for x, e in points]
    for x, e in points:
        if len(e) != m:
            raise ValueError("kernel vector length must equal m")
    return sample_detrep(hermitian_solution_space(cons, m, field), m, rng)


def homogeneous_through_points(points, n: int, rng: np.random.Generator,
                               low: int = -3, high: int = 3) -> MultiPoly:
    """Random homogeneous degree-``n`` polynomial vanishing at the given points."""
    mons = MonomialIndex(n).monomials
    rows = [[np.prod([to_exact(v) ** k for v, k in zip(x, mono)], dtype=object)
             for mono in mons] for x in points]
    if rows:
        split = []
        for r in rows:
            split.extend(_real_rows(r))
        basis = kernel(matrix(split)).basis
    else:
        basis = np.array([[Fraction(int(i == j)) for j in range(len(mons))]
                          for i in range(len(mons))], dtype=object)
    if basis.shape[1] == 0:
        raise InfeasibleError("no degree-n polynomial vanishes at all points")
    while True:
        w = rng.integers(low, high + 1, basis.shape[1])
        if w.any():
            break
    coef = basis @ np.array([Fraction(int(v)) for v in w], dtype=object)
    return MultiPoly(3, {mono: c for mono, c in zip(mons, coef)})


def conic() -> DetRep:
    """``x0^2 - x1^2 - x2^2`` with D0 = I, D1 = diag(1, -1), D2 = antidiag(1, 1)."""
    return DetRep(matrix([[1, 0], [0, 1]]), matrix([[1, 0], [0, -1]]), matrix([[0, 1], [1, 0]]))


def random_detrep(m: int, rng: np.random.Generator, field: str = "complex") -> DetRep:
    return detrep_through_points([], m, rng, field)


__all__ = [
    "DetRep", "CurvePoint", "PrincipalSubspace", "GeneralizedBezout", "BasepointReduction",
    "ImageCurve", "BilinearReport", "InfeasibleError", "DegenerateMapError", "exact_point",
    "float_point", "line_points", "pencil_points", "sample_curve_points", "vandermonde_vector",
    "point_vandermonde", "principal_subspace", "bezout_decomposition",
    "decomposition_identity_holds", "assemble_blown", "curve_bezout", "curve_common_zero_count",
    "bilinear_vanishing_check", "basepoint_reduce", "image_detrep", "image_residuals",
    "relative_value", "vandermonde_rank", "detrep_through_points", "homogeneous_through_points",
    "hermitian_solution_space", "point_constraint", "sample_detrep", "conic", "random_detrep",
    "left_kernel_point", "blown_dim",
]
