"""Simultaneous-iteration root finding (Aberth-Ehrlich) for univariate polynomials."""
from __future__ import annotations

import cmath

import numpy as np

from .exact import DEFAULT_TOL


class ConvergenceError(RuntimeError):
    """Root iteration hit its cap; ``best`` holds the last iterate."""

    def __init__(self, msg, best):
        super().__init__(msg)
        self.best = best


def _coeff_array(p) -> np.ndarray:
    """Complex coefficients, highest degree first, leading zeros stripped."""
    from .poly import MultiPoly

    if isinstance(p, MultiPoly):
        c = [complex(v) for v in p.coeffs()][::-1]
    else:
        c = [complex(v) for v in p][::-1]
    c = np.array(c, dtype=complex)
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise ValueError("zero polynomial has no roots")
    return c[nz[0]:]


def _initial_guesses(c: np.ndarray) -> np.ndarray:
    n = len(c) - 1
    a = np.abs(c[1:] / c[0])
    # Fujiwara-style bound on the root moduli
    radius = 2 * max(a[k] ** (1.0 / (k + 1)) for k in range(n)) if n else 1.0
    radius = radius if radius > 0 else 1.0
    angles = 2 * np.pi * np.arange(n) / n + 0.4
    return 0.5 * radius * np.exp(1j * angles)


def poly_roots(p, tol: float = DEFAULT_TOL, max_iter: int = 500):
    """All complex roots of ``p`` (a ``MultiPoly`` or coefficients low->high).

    Returns a list of roots.  Each root satisfies ``|p(r)| / ||p|| < tol``,
    where the norm is the sum of |coefficient| * max(1, |r|)^k.  Raises
    :class:`ConvergenceError` with the best iterate after ``max_iter``.
    """
    c = _coeff_array(p)
    n = len(c) - 1
    if n < 1:
        raise ValueError("degree must be at least 1")
    # exact roots at the origin are split off before iterating
    zero = len(c) - 1 - np.flatnonzero(c)[-1]
    if zero:
        rest = poly_roots(c[:len(c) - zero][::-1], tol, max_iter) if n > zero else []
        return rest + [0j] * zero
    if n == 1:
        return [-c[1] / c[0]]
    c = c / c[0]
    dc = c[:-1] * np.arange(n, 0, -1)
    z = _initial_guesses(c)
    offdiag = ~np.eye(n, dtype=bool)
    for _ in range(max_iter):
        pz = np.polyval(c, z)
        dpz = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = pz / dpz
            diff = z[:, None] - z[None, :]
            s = np.sum(np.where(offdiag, 1.0 / np.where(offdiag, diff, 1.0), 0), axis=1)
            step = ratio / (1 - ratio * s)
        step = np.where(np.isfinite(step), step, 0)
        z = z - step
        if np.all(np.abs(step) <= 4 * np.finfo(float).eps * np.maximum(1.0, np.abs(z))):
            break
    if not _residuals_ok(c, z, tol):
        raise ConvergenceError(f"root iteration did not converge in {max_iter} steps", list(z))
    return [complex(r) for r in z]


def _residuals_ok(c: np.ndarray, z: np.ndarray, tol: float) -> bool:
    return bool(np.all(relative_residuals(c, z) < tol))


def relative_residuals(c: np.ndarray, z) -> np.ndarray:
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    num = np.abs(np.polyval(c, z))
    den = np.polyval(np.abs(c), np.maximum(np.abs(z), 1.0))
    return num / np.where(den > 0, den, 1.0)


def cluster_roots(roots, tol: float = DEFAULT_TOL):
    """Group roots closer than ``10 * tol`` (relative); returns (centre, multiplicity)."""
    out: list[list] = []
    for r in sorted(roots, key=lambda w: (round(w.real, 12), round(w.imag, 12))):
        for grp in out:
            if abs(grp[0] - r) <= 10 * tol * max(1.0, abs(r)):
                grp[1].append(r)
                break
        else:
            out.append([r, [r]])
    return [(complex(np.mean(g)), len(g)) for _, g in out]


def complex_sort_key(z: complex):
    return (round(z.real, 9), round(z.imag, 9), cmath.phase(z))


__all__ = ["ConvergenceError", "poly_roots", "cluster_roots", "relative_residuals"]
