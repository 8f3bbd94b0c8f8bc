"""Two-operator commutative vessels and their rational transformations.

A vessel is ``(A1, A2, Phi, sigma1, sigma2, gamma_in, gamma_out)`` with

* ``A1 A2 = A2 A1``
* ``Phi^* sigma_k Phi = (A_k - A_k^*) / i``
* ``gamma_in Phi = sigma1 Phi A2^* - sigma2 Phi A1^*``
* ``gamma_out Phi = sigma1 Phi A2 - sigma2 Phi A1``
* ``gamma_out = gamma_in + i (sigma1 Phi Phi^* sigma2 - sigma2 Phi Phi^* sigma1)``

Its discriminant ``det(y1 sigma2 - y2 sigma1 + gamma_in)`` is handed to the
curve layer as the triple ``D0 = gamma_in, D1 = sigma2, D2 = sigma1``; every
construction on the transformed vessel goes through that one dictionary.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curve import (BasepointReduction, DetRep, InfeasibleError, assemble_blown,
                    basepoint_reduce, bezout_decomposition, principal_subspace,
                    relative_value, sample_curve_points, vandermonde_vector)
from .detpoly import pencil_polynomial
from .exact import (GaussianRational, I, as_float, column_space, congruence_restrict,
                    ctranspose, eye, gaussian,
                    inverse, is_exact, is_hermitian, kernel, matrix, orthogonal_projector,
                    rank_kernel, rref, solve, to_exact, zeros)
from .poly import MultiPoly, homogenize

SIGMA_ORDERS = ("validated", "printed")
AXIOMS = ("commute", "coupling", "gamma_in", "gamma_out", "linkage")


class BasepointAtSpectrumError(ValueError):
    """``p0(A1^*, A2^*)`` is singular."""


class ConventionError(RuntimeError):
    """A transformed vessel failed its axioms."""


@dataclass(frozen=True, eq=False)
class Vessel:
    A1: np.ndarray
    A2: np.ndarray
    Phi: np.ndarray
    sigma1: np.ndarray
    sigma2: np.ndarray
    gamma_in: np.ndarray
    gamma_out: np.ndarray

    def __post_init__(self):
        h = self.A1.shape[0]
        e = self.sigma1.shape[0]
        shapes = {"A1": (h, h), "A2": (h, h), "Phi": (e, h), "sigma1": (e, e),
                  "sigma2": (e, e), "gamma_in": (e, e), "gamma_out": (e, e)}
        for name, shape in shapes.items():
            if getattr(self, name).shape != shape:
                raise ValueError(f"{name} has shape {getattr(self, name).shape}, expected {shape}")

    @property
    def dim_h(self) -> int:
        return self.A1.shape[0]

    @property
    def dim_e(self) -> int:
        return self.sigma1.shape[0]

    @property
    def exact(self) -> bool:
        return all(is_exact(getattr(self, f)) for f in
                   ("A1", "A2", "Phi", "sigma1", "sigma2", "gamma_in", "gamma_out"))

    def detrep(self, allow_degenerate: bool = False) -> DetRep:
        """Curve-side triple ``(gamma_in, sigma2, sigma1)``."""
        return DetRep(self.gamma_in, self.sigma2, self.sigma1, allow_degenerate)

    def in_pencil(self, y1, y2) -> np.ndarray:
        return y1 * self.sigma2 - y2 * self.sigma1 + self.gamma_in

    def out_pencil(self, y1, y2) -> np.ndarray:
        return y1 * self.sigma2 - y2 * self.sigma1 + self.gamma_out


def _linkage(Phi, s1, s2, g_in):
    PP = Phi @ ctranspose(Phi)
    return g_in + I * (s1 @ PP @ s2 - s2 @ PP @ s1) if is_exact(Phi) else \
        g_in + 1j * (s1 @ PP @ s2 - s2 @ PP @ s1)


def _imag_part(A):
    """``(A - A^*) / i``."""
    D = A - ctranspose(A)
    return D * gaussian(0, -1) if is_exact(A) else D * (-1j)


@dataclass
class VesselReport:
    residuals: dict
    exact: bool
    hermitian: bool
    tol: float = 1e-9

    @property
    def failing(self) -> list:
        bad = [k for k, v in self.residuals.items() if (v != 0 if self.exact else v > self.tol)]
        return bad + ([] if self.hermitian else ["hermitian"])

    @property
    def ok(self) -> bool:
        return not self.failing


def _norm(R) -> float:
    if R.size == 0:
        return 0.0
    return float(np.linalg.norm(as_float(R)))


def vessel_check(V: Vessel, tol: float = 1e-9) -> VesselReport:
    """Residual of each vessel axiom (Frobenius norm; exact zero on exact data).

    ``coupling`` combines both imaginary-part identities.
    """
    Ph = ctranspose(V.Phi)
    A1s, A2s = ctranspose(V.A1), ctranspose(V.A2)
    R = {
        "commute": V.A1 @ V.A2 - V.A2 @ V.A1,
        "coupling": np.hstack([Ph @ V.sigma1 @ V.Phi - _imag_part(V.A1),
                               Ph @ V.sigma2 @ V.Phi - _imag_part(V.A2)]),
        "gamma_in": V.gamma_in @ V.Phi - (V.sigma1 @ V.Phi @ A2s - V.sigma2 @ V.Phi @ A1s),
        "gamma_out": V.gamma_out @ V.Phi - (V.sigma1 @ V.Phi @ V.A2 - V.sigma2 @ V.Phi @ V.A1),
        "linkage": V.gamma_out - _linkage(V.Phi, V.sigma1, V.sigma2, V.gamma_in),
    }
    exact = V.exact
    herm = all(is_hermitian(M, None if exact else tol)
               for M in (V.sigma1, V.sigma2, V.gamma_in, V.gamma_out))
    if exact:
        res = {k: (0 if not any(M.ravel()) else _norm(M)) for k, M in R.items()}
    else:
        res = {k: _norm(M) for k, M in R.items()}
    return VesselReport(res, exact, herm, tol)


# ---------------------------------------------------------------------------
# constructions

def vessel_from_operators(A1: np.ndarray, A2: np.ndarray) -> Vessel:
    """Vessel on the joint nonhermitian subspace of a commuting exact pair.

    ``E`` has an echelon basis ``U`` of the column space of the two imaginary parts,
    ``Phi = U^*`` and ``sigma_k = U^+ G_k U^{+*}``; ``gamma_in`` solves its
    linear axiom (always consistent for commuting operators) and ``gamma_out``
    comes from the linkage identity.
    """
    if not (is_exact(A1) and is_exact(A2)):
        raise TypeError("operators must be exact")
    if any((A1 @ A2 - A2 @ A1).ravel()):
        raise ValueError("operators do not commute")
    G1, G2 = _imag_part(A1), _imag_part(A2)
    h = A1.shape[0]
    # rows of the echelon form of [G1 G2]^* span the conjugate column space
    R, piv = rref(ctranspose(np.hstack([G1, G2])))
    U = ctranspose(R[:len(piv), :])
    e = U.shape[1]
    if e == 0:
        Z = zeros(0, 0)
        return Vessel(A1, A2, zeros(0, h), Z, Z, Z, Z)
    Uh = ctranspose(U)
    Upinv = inverse(Uh @ U) @ Uh
    s1 = Upinv @ G1 @ ctranspose(Upinv)
    s2 = Upinv @ G2 @ ctranspose(Upinv)
    Phi = Uh
    rhs = s1 @ Phi @ ctranspose(A2) - s2 @ Phi @ ctranspose(A1)
    g_t = solve(ctranspose(Phi), ctranspose(rhs))
    if g_t is None:
        raise InfeasibleError("gamma_in system is inconsistent")
    g_in = ctranspose(g_t)
    g_out = _linkage(Phi, s1, s2, g_in)
    V = Vessel(A1, A2, Phi, s1, s2, g_in, g_out)
    rep = vessel_check(V)
    if not rep.ok:
        raise InfeasibleError(f"constructed data violates {rep.failing}")
    return V


def _lagrange_matrix(A: np.ndarray, nodes, values) -> np.ndarray:
    """``L(A)`` for the interpolating polynomial with ``L(nodes_k) = values_k``."""
    n = A.shape[0]
    out = zeros(n, n)
    for k, (xk, vk) in enumerate(zip(nodes, values)):
        term = eye(n) * vk
        for j, xj in enumerate(nodes):
            if j != k:
                term = term @ (A - eye(n) * xj) * (1 / (xk - xj))
        out = out + term
    return out


def vessel_fixture(diag1, diag2, coupling, seed: int | None = None,
                   allow_degenerate: bool = False) -> Vessel:
    """Vessel on a commuting upper-triangular pair.

    ``A1`` is ``diag(diag1)`` plus a first row ``coupling`` (so its imaginary
    part has rank at most two); ``A2 = L(A1)`` with ``L`` interpolating the
    eigenvalues of ``A1`` to ``diag2``.  ``seed`` fills the rest of the
    strict upper triangle of row 0 when ``coupling`` is shorter than ``dim H``.
    A vessel whose discriminant vanishes identically is rejected unless
    ``allow_degenerate`` is set.
    """
    d1 = [to_exact(v) for v in diag1]
    d2 = [to_exact(v) for v in diag2]
    h = len(d1)
    if len(d2) != h:
        raise ValueError("diag1 and diag2 must have equal length")
    c = [to_exact(v) for v in coupling]
    if len(c) < h:
        rng = np.random.default_rng(seed)
        c += [Fraction(int(v)) for v in rng.integers(-2, 3, h - len(c))]
    A1 = zeros(h, h)
    for k in range(h):
        A1[k, k] = d1[k]
    A1[0, :] = A1[0, :] + np.array(c[:h], dtype=object)
    eig = [A1[k, k] for k in range(h)]
    if len(set(eig)) != h:
        raise ValueError("eigenvalues of A1 must be distinct")
    A2 = _lagrange_matrix(A1, eig, d2)
    V = vessel_from_operators(A1, A2)
    if not allow_degenerate and V.dim_e and discriminant(V).polynomial.is_zero():
        raise InfeasibleError("discriminant vanishes identically")
    return V


def one_dim_fixture() -> Vessel:
    """``A1 = [i]``, ``A2 = [2i + 1]``; discriminant ``4 y1 - 2 y2 + 2``."""
    return vessel_from_operators(matrix([[I]]), matrix([[2 * I + 1]]))


def linear_fixture(A1: np.ndarray, alpha, beta) -> Vessel:
    """``A2 = alpha A1 + beta I`` with real ``alpha``, ``beta``."""
    return vessel_from_operators(A1, alpha * A1 + beta * eye(A1.shape[0]))


def zero_vessel(A1: np.ndarray, A2: np.ndarray, dim_e: int = 0, sigma1=None, sigma2=None) -> Vessel:
    """``Phi = 0`` vessel over commuting selfadjoint operators."""
    h = A1.shape[0]
    s1 = zeros(dim_e, dim_e) if sigma1 is None else sigma1
    s2 = zeros(dim_e, dim_e) if sigma2 is None else sigma2
    Z = zeros(dim_e, dim_e)
    return Vessel(A1, A2, zeros(dim_e, h), s1, s2, Z, Z)


def _real_symmetric_units(m: int):
    units = []
    for i in range(m):
        for j in range(i, m):
            E = zeros(m, m)
            E[i, j] = E[j, i] = Fraction(1)
            units.append(E)
    return units


def prescribed_curve_vessel(points, phis, m: int, basepoints=(), rng=None,
                            attempts: int = 20) -> Vessel:
    """Diagonal vessel whose discriminant passes through prescribed points.

    ``A_k = diag(lambda_k^(j))``, ``Phi`` has real columns ``phi_j``; real
    symmetric ``sigma1, sigma2, gamma_in`` are sampled from the affine
    solution set of the coupling and input axioms, which forces
    ``conj(lambda^(j))`` onto the discriminant with kernel ``phi_j``.  Each
    extra ``(y, e)`` in ``basepoints`` is forced onto the curve too.
    """
    rng = np.random.default_rng(0) if rng is None else rng
    lam = [tuple(to_exact(v) for v in p) for p in points]
    phis = [np.array([to_exact(v) for v in f], dtype=object) for f in phis]
    N = len(lam)
    units = _real_symmetric_units(m)
    nu = len(units)
    # unknown order: sigma1, sigma2, gamma_in
    rows, rhs = [], []

    def add(cols, value):
        cols = [to_exact(v) for v in cols]
        value = to_exact(value)
        re = [Fraction(v.real) for v in cols]
        im = [Fraction(v.imag) for v in cols]
        rows.append(re)
        rhs.append(Fraction(value.real))
        if any(im) or value.imag:
            rows.append(im)
            rhs.append(Fraction(value.imag))

    def pencil_cols(y1, y2, e):
        # (y1 sigma2 - y2 sigma1 + gamma_in) e, one column per unknown
        cols = [[-y2 * (U @ e)[r] for U in units] + [y1 * (U @ e)[r] for U in units]
                + [(U @ e)[r] for U in units] for r in range(m)]
        return cols

    for (l1, l2), f in zip(lam, phis):
        for c in pencil_cols(l1.conjugate() if hasattr(l1, "conjugate") else l1,
                             l2.conjugate() if hasattr(l2, "conjugate") else l2, f):
            add(c, 0)
    for j in range(N):
        for l in range(j, N):
            for k in range(2):
                cols = [Fraction(0)] * (3 * nu)
                for u, U in enumerate(units):
                    cols[k * nu + u] = phis[j] @ U @ phis[l]
                target = 2 * to_exact(lam[j][k]).imag if j == l else 0
                add(cols, target)
    for y, e in basepoints:
        e = np.array([to_exact(v) for v in e], dtype=object)
        for c in pencil_cols(to_exact(y[0]), to_exact(y[1]), e):
            add(c, 0)
    A = matrix(rows)
    b = np.array(rhs, dtype=object).reshape(-1, 1)
    part = solve(A, b)
    if part is None:
        raise InfeasibleError("prescribed data admit no real symmetric solution")
    K = kernel(A).basis
    A1 = zeros(N, N)
    A2 = zeros(N, N)
    for j, (l1, l2) in enumerate(lam):
        A1[j, j], A2[j, j] = l1, l2
    Phi = np.column_stack(phis) if N else zeros(m, 0)
    for _ in range(attempts):
        w = np.array([Fraction(int(v)) for v in rng.integers(-3, 4, K.shape[1])], dtype=object)
        theta = part[:, 0] + (K @ w if K.shape[1] else 0)
        mats = []
        for k in range(3):
            M = zeros(m, m)
            for u, U in enumerate(units):
                if theta[k * nu + u]:
                    M = M + theta[k * nu + u] * U
            mats.append(M)
        s1, s2, g_in = mats
        if pencil_polynomial(g_in, [s2, -s1]).is_zero():
            continue
        V = Vessel(A1, A2, Phi, s1, s2, g_in, _linkage(Phi, s1, s2, g_in))
        if vessel_check(V).ok:
            return V
    raise InfeasibleError("no sampled solution has a nonzero discriminant")


# ---------------------------------------------------------------------------
# discriminant, Cayley-Hamilton, fibers

@dataclass(frozen=True, eq=False)
class Discriminant:
    polynomial: MultiPoly
    out_polynomial: MultiPoly

    @property
    def in_equals_out(self) -> bool:
        return self.polynomial == self.out_polynomial


def discriminant(V: Vessel) -> Discriminant:
    """``det(y1 sigma2 - y2 sigma1 + gamma)`` for the in and out matrices."""
    if V.dim_e == 0:
        one = MultiPoly.const(1, 2)
        return Discriminant(one, one)
    din = pencil_polynomial(V.gamma_in, [V.sigma2, -V.sigma1])
    dout = pencil_polynomial(V.gamma_out, [V.sigma2, -V.sigma1])
    return Discriminant(din, dout)


def vessel_principal_subspace(V: Vessel):
    """``span{A1^a A2^b Phi^* xi}``, grown until it stops increasing."""
    S = column_space(ctranspose(V.Phi)) if V.dim_e else None
    if S is None or S.dim == 0:
        return zeros(V.dim_h, 0)
    basis = S.basis
    while True:
        grown = column_space(np.hstack([basis, V.A1 @ basis, V.A2 @ basis])).basis
        if grown.shape[1] == basis.shape[1]:
            return basis
        basis = grown


def cayley_hamilton_check(V: Vessel, disc: Discriminant | None = None):
    """``Delta(A1, A2)`` restricted to the principal subspace (matrix and norm)."""
    disc = discriminant(V) if disc is None else disc
    P = vessel_principal_subspace(V)
    if P.shape[1] == 0:
        return zeros(V.dim_h, 0), 0
    R = disc.polynomial.evaluate_matrices((V.A1, V.A2)) @ P
    return R, (0 if is_exact(R) and not any(R.ravel()) else _norm(R))


def fibers(V: Vessel, point, tol: float = 1e-9):
    """Kernels of the in and out pencils at ``(y1, y2)``."""
    y1, y2 = point
    disc = discriminant(V)
    exact = V.exact and all(to_exact_or_none(v) is not None for v in point)
    if exact:
        y1, y2 = to_exact(y1), to_exact(y2)
        if disc.polynomial.evaluate((y1, y2)) != 0:
            warnings.warn("point is not on the discriminant curve", stacklevel=2)
        return kernel(V.in_pencil(y1, y2)), kernel(V.out_pencil(y1, y2))
    y1, y2 = complex(y1), complex(y2)
    if relative_value(disc.polynomial, (y1, y2)) > tol:
        warnings.warn("point is not on the discriminant curve", stacklevel=2)
    F = {k: as_float(getattr(V, k)) for k in ("sigma1", "sigma2", "gamma_in", "gamma_out")}
    pin = y1 * F["sigma2"] - y2 * F["sigma1"] + F["gamma_in"]
    pout = y1 * F["sigma2"] - y2 * F["sigma1"] + F["gamma_out"]
    return rank_kernel(pin, tol)[1], rank_kernel(pout, tol)[1]


def to_exact_or_none(v):
    if isinstance(v, (float, complex)):
        return None
    try:
        return to_exact(v)
    except TypeError:
        return None


# ---------------------------------------------------------------------------
# rational transformation

@dataclass(frozen=True, eq=False)
class RationalPair:
    """``r1 = p1 / p0``, ``r2 = p2 / p0`` in the variables ``(y1, y2)``."""

    p0: MultiPoly
    p1: MultiPoly
    p2: MultiPoly
    n: int

    def __post_init__(self):
        for k, p in enumerate((self.p0, self.p1, self.p2)):
            if p.nvars != 2:
                raise ValueError(f"p{k} must be bivariate")
            if not p.is_real():
                raise ValueError(f"p{k} must have real coefficients")
            if p.degree() > self.n:
                raise ValueError(f"deg p{k} exceeds n = {self.n}")
        if self.p0.is_zero():
            raise ValueError("p0 must not vanish identically")

    @classmethod
    def identity(cls) -> "RationalPair":
        y1, y2 = MultiPoly.variables(2)
        return cls(MultiPoly.const(1, 2), y1, y2, 1)

    def homogeneous(self):
        return tuple(homogenize(p, self.n) for p in (self.p0, self.p1, self.p2))

    def __call__(self, y):
        d = self.p0.evaluate(y)
        return self.p1.evaluate(y) / d, self.p2.evaluate(y) / d


@dataclass(frozen=True, eq=False)
class Transformed:
    """Result of the rational transformation, with the data needed downstream."""

    vessel: Vessel
    rp: RationalPair
    detrep: DetRep
    basis: np.ndarray           # columns span V_n inside W_n
    phi_w: np.ndarray           # Phi' with values in W_n
    blown: dict                 # (i, j) -> B(P_i, P_j) on W_n
    sigma_order: str


def _phi_blocks(V: Vessel, n: int, adjoint: bool = True) -> np.ndarray:
    """Block column ``(Phi A1^{*i1} A2^{*i2})`` over degree ``n-1`` monomials."""
    from .poly import MonomialIndex

    B1 = ctranspose(V.A1) if adjoint else V.A1
    B2 = ctranspose(V.A2) if adjoint else V.A2
    pw1, pw2 = [eye(V.dim_h)], [eye(V.dim_h)]
    for _ in range(n):
        pw1.append(pw1[-1] @ B1)
        pw2.append(pw2[-1] @ B2)
    return np.vstack([V.Phi @ pw1[i1] @ pw2[i2] for (_, i1, i2) in MonomialIndex(n - 1)])


def _bezout_blown(Pi, Pj, dr: DetRep, n: int) -> np.ndarray:
    return assemble_blown(bezout_decomposition(Pi, Pj, n), dr)


def transform_vessel(V: Vessel, rp: RationalPair, sigma_order: str = "validated",
                     check: bool = True) -> Transformed:
    """The vessel ``V'`` on ``E' = V_n`` (coordinates in an exact basis ``C``).

    ``Phi'`` solves ``C Phi' = (Phi A1^{*i1} A2^{*i2}) p0(A^*)^{-1}``;
    ``sigma'_k = C^* B(P_k, P_0) C`` (``B(P_0, P_k)`` with ``sigma_order =
    "printed"``), ``gamma'_in = C^* B(P_1, P_2) C`` and ``gamma'_out`` is
    given by linkage.  ``A'_k = p_k(A) p0(A)^{-1}``.
    """
    if sigma_order not in SIGMA_ORDERS:
        raise ValueError(f"sigma_order must be one of {SIGMA_ORDERS}")
    if not V.exact:
        raise TypeError("transform_vessel needs an exact vessel")
    n = rp.n
    P = rp.homogeneous()
    A = (V.A1, V.A2)
    As = (ctranspose(V.A1), ctranspose(V.A2))
    try:
        p0s_inv = inverse(rp.p0.evaluate_matrices(As))
        p0_inv = inverse(rp.p0.evaluate_matrices(A))
    except ZeroDivisionError:
        raise BasepointAtSpectrumError("basepoint at operator spectrum: p0(A*) is singular") from None
    A1p = rp.p1.evaluate_matrices(A) @ p0_inv
    A2p = rp.p2.evaluate_matrices(A) @ p0_inv
    dr = V.detrep(allow_degenerate=True)
    vn = principal_subspace(dr, n)
    C = vn.basis
    phi_w = _phi_blocks(V, n) @ p0s_inv
    coords = solve(C, phi_w)
    if coords is None:
        raise ConventionError("Phi' does not take values in the principal subspace")
    pairs = {(1, 0): None, (2, 0): None, (0, 1): None, (0, 2): None, (1, 2): None}
    blown = {k: _bezout_blown(P[k[0]], P[k[1]], dr, n) for k in pairs}
    if sigma_order == "validated":
        s1, s2 = blown[(1, 0)], blown[(2, 0)]
    else:
        s1, s2 = blown[(0, 1)], blown[(0, 2)]
    s1p, s2p = congruence_restrict(s1, C), congruence_restrict(s2, C)
    ginp = congruence_restrict(blown[(1, 2)], C)
    Vp = Vessel(A1p, A2p, coords, s1p, s2p, ginp, _linkage(coords, s1p, s2p, ginp))
    if check:
        rep = vessel_check(Vp)
        if not rep.ok:
            raise ConventionError(f"transformed vessel violates {rep.failing}")
    return Transformed(Vp, rp, dr, C, phi_w, blown, sigma_order)


@dataclass(frozen=True, eq=False)
class Reduced:
    vessel: Vessel
    basis: np.ndarray           # columns span Vbar_n inside W_n
    phi_w: np.ndarray
    reduction: BasepointReduction
    exact: bool

    @property
    def basepoints(self):
        return self.reduction.basepoints


def reduce_transformed(T: Transformed, check: bool = True) -> Reduced:
    """Compress ``V'`` to ``E'' = Vbar_n``, the complement of the basepoint span.

    ``Phi''`` is the orthogonal projection (in ``W_n``) of ``Phi'`` onto
    ``Vbar_n``; the pencil matrices are compressed by congruence and
    ``gamma''_out`` again comes from linkage.
    """
    P = T.rp.homogeneous()
    red = basepoint_reduce(*P, T.detrep, T.rp.n)
    Cb = red.vbar.basis
    exact = red.exact
    if Cb.shape[1] == 0:
        Z = zeros(0, 0)
        h = T.vessel.dim_h
        Vr = Vessel(T.vessel.A1, T.vessel.A2, zeros(0, h), Z, Z, Z, Z)
        return Reduced(Vr, Cb, zeros(Cb.shape[0], h), red, exact)
    phi_w = orthogonal_projector(Cb) @ T.phi_w
    coords = solve(Cb, phi_w)
    if coords is None:
        raise ConventionError("projected Phi'' left the reduced subspace")
    if T.sigma_order == "validated":
        s1, s2 = T.blown[(1, 0)], T.blown[(2, 0)]
    else:
        s1, s2 = T.blown[(0, 1)], T.blown[(0, 2)]
    s1r, s2r = congruence_restrict(s1, Cb), congruence_restrict(s2, Cb)
    ginr = congruence_restrict(T.blown[(1, 2)], Cb)
    Vr = Vessel(T.vessel.A1, T.vessel.A2, coords, s1r, s2r, ginr,
                _linkage(coords, s1r, s2r, ginr))
    if check:
        rep = vessel_check(Vr)
        if not rep.ok:
            raise ConventionError(f"reduced vessel violates {rep.failing}")
    return Reduced(Vr, Cb, phi_w, red, exact)


# ---------------------------------------------------------------------------
# theorem checks

@dataclass
class ImageReport:
    samples: int = 0
    exact_samples: int = 0
    exact_failures: int = 0
    max_residual: float = 0.0
    degree: int = -1
    expected_degree: int | None = None
    identically_zero: bool = False
    tol: float = 1e-8

    @property
    def ok(self) -> bool:
        deg_ok = self.expected_degree is None or self.degree == self.expected_degree
        return (not self.identically_zero and self.exact_failures == 0 and deg_ok
                and self.max_residual < self.tol)


def sample_vessel_curve(V: Vessel, rp: RationalPair | None, count: int,
                        rng: np.random.Generator):
    """Affine curve points ``(y1, y2)`` of the discriminant, avoiding ``p0 = 0``.

    Exact points (joint eigenvalues of ``A^*``) come first, then floating
    points from random lines.
    """
    pts = [pt for pt, _, _ in in_fiber_points(V)]
    out = [p for p in pts if rp is None or rp.p0.evaluate(p) != 0]
    dr = V.detrep()
    while len(out) < count:
        for cp in sample_curve_points(dr, count, rng, smooth_only=False):
            x = cp.x
            if abs(complex(x[0])) < 1e-8:
                continue
            y = (cp.x[1] / cp.x[0], cp.x[2] / cp.x[0]) if cp.exact else \
                (complex(x[1]) / complex(x[0]), complex(x[2]) / complex(x[0]))
            if rp is not None and abs(complex(rp.p0.evaluate(y))) < 1e-8:
                continue
            out.append(y)
    return out[:max(count, len(pts))]


def discriminant_image_check(Vr: Vessel, rp: RationalPair, V: Vessel, samples: int = 20,
                             rng: np.random.Generator | None = None,
                             basepoint_count: int | None = None,
                             tol: float = 1e-8) -> ImageReport:
    """``Delta''(r(lambda)) = 0`` along the original discriminant curve."""
    rng = np.random.default_rng(0) if rng is None else rng
    disc = discriminant(Vr).polynomial
    rep = ImageReport(tol=tol)
    rep.degree = disc.degree()
    if basepoint_count is not None:
        rep.expected_degree = rp.n * V.dim_e - basepoint_count
    if Vr.dim_e and disc.is_zero():
        rep.identically_zero = True
        return rep
    for y in sample_vessel_curve(V, rp, samples, rng):
        z = rp(y)
        rep.samples += 1
        if all(isinstance(v, (Fraction, GaussianRational)) for v in z):
            rep.exact_samples += 1
            if disc.evaluate(z) != 0:
                rep.exact_failures += 1
        else:
            rep.max_residual = max(rep.max_residual, relative_value(disc, z))
    return rep


def in_fiber_points(V: Vessel):
    """Exact in-fiber data ``(conj(lambda), Phi v, v)`` for eigenvectors ``v`` of ``A^*``.

    Only joint eigenvectors with exact eigenvalues are found: eigenvalues
    are read from the diagonal, so triangular operators are required.
    """
    return _eigen_fiber_points(V, adjoint=True)


def out_fiber_points(V: Vessel):
    """Exact out-fiber data ``(lambda, Phi v, v)`` for eigenvectors ``v`` of ``A``."""
    return _eigen_fiber_points(V, adjoint=False)


def _eigen_fiber_points(V: Vessel, adjoint: bool):
    A1 = ctranspose(V.A1) if adjoint else V.A1
    A2 = ctranspose(V.A2) if adjoint else V.A2
    if not (_triangular(A1) and _triangular(A2)):
        return []
    out = []
    seen = set()
    for k in range(V.dim_h):
        lam = (A1[k, k], A2[k, k])
        if lam in seen:
            continue
        seen.add(lam)
        K = kernel(np.vstack([A1 - eye(V.dim_h) * lam[0], A2 - eye(V.dim_h) * lam[1]]))
        for c in range(K.dim):
            e = V.Phi @ K.basis[:, c]
            if any(e):
                out.append((lam, e, K.basis[:, c]))
    return out


def _triangular(A) -> bool:
    n = A.shape[0]
    upper = not any(A[i, j] for i in range(n) for j in range(i))
    lower = not any(A[i, j] for i in range(n) for j in range(i + 1, n))
    return upper or lower


@dataclass
class FiberReport:
    exact: bool
    in_residual: object
    out_residual: object | None
    mapped: np.ndarray | None = None
    collision: bool = False
    tol: float = 1e-8

    @property
    def ok(self) -> bool:
        if self.collision:
            return False
        vals = [self.in_residual] + ([] if self.out_residual is None else [self.out_residual])
        return all(v == 0 for v in vals) if self.exact else all(v <= self.tol for v in vals)


def fiber_map(R: Reduced, point, e) -> np.ndarray:
    """``(lambda^i e)`` projected to ``E''``, in the coordinates of ``E''``."""
    n = R.reduction.vn.n
    x = (1,) + tuple(point)
    exact = is_exact(np.asarray(e, dtype=object)) and all(to_exact_or_none(v) is not None for v in point)
    if exact:
        w = vandermonde_vector(tuple(to_exact(v) for v in x), np.asarray(e, dtype=object), n)
        return solve(R.basis, orthogonal_projector(R.basis) @ w.reshape(-1, 1))[:, 0]
    w = vandermonde_vector(tuple(complex(v) for v in x), as_float(np.asarray(e)), n)
    Cb = as_float(R.basis)
    coef, *_ = np.linalg.lstsq(Cb, w, rcond=None)
    return coef


def fiber_isomorphism_check(V: Vessel, R: Reduced, rp: RationalPair, point, e,
                            out_vector=None, tol: float = 1e-8) -> FiberReport:
    """The mapped in-fiber vector is killed by the reduced in-pencil at ``r(lambda)``.

    With ``out_vector = v`` (an eigenvector of ``A`` at ``lambda``), also
    checks that ``Phi'' v`` lies in the reduced out-fiber at ``r(lambda)``.
    """
    Vr = R.vessel
    a = fiber_map(R, point, e)
    if Vr.dim_e == 0:
        return FiberReport(True, 0, None, a, collision=True)
    exact = is_exact(a)
    z = rp(tuple(to_exact(v) for v in point)) if exact else rp(tuple(complex(v) for v in point))
    if exact:
        r = Vr.in_pencil(*z) @ a
        in_res = 0 if not any(r) else _norm(r.reshape(-1, 1))
        collision = not any(a)
    else:
        M = (complex(z[0]) * as_float(Vr.sigma2) - complex(z[1]) * as_float(Vr.sigma1)
             + as_float(Vr.gamma_in))
        in_res = float(np.linalg.norm(M @ a) / max(np.linalg.norm(M) * np.linalg.norm(a), 1e-300))
        collision = np.linalg.norm(a) <= tol
    out_res = None
    if out_vector is not None:
        v = np.asarray(out_vector, dtype=object)
        lam = tuple(to_exact(x) for x in point)
        zo = rp(lam)
        f = Vr.Phi @ v
        r = Vr.out_pencil(*zo) @ f
        out_res = 0 if not any(r) else _norm(r.reshape(-1, 1))
    return FiberReport(exact, in_res, out_res, a, collision, tol)


__all__ = [
    "Vessel", "VesselReport", "RationalPair", "Transformed", "Reduced", "Discriminant",
    "ImageReport", "FiberReport", "BasepointAtSpectrumError", "ConventionError", "AXIOMS",
    "SIGMA_ORDERS", "vessel_check", "vessel_from_operators", "vessel_fixture", "one_dim_fixture",
    "linear_fixture", "zero_vessel", "prescribed_curve_vessel", "discriminant",
    "vessel_principal_subspace", "cayley_hamilton_check", "fibers", "transform_vessel",
    "reduce_transformed", "discriminant_image_check", "fiber_isomorphism_check", "fiber_map",
    "in_fiber_points", "out_fiber_points", "sample_vessel_curve",
]
