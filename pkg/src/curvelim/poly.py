"""Sparse multivariate polynomials with exact coefficients.

One type covers univariate (classical elimination), bivariate (vessel
coordinates y1, y2) and trivariate projective (x0, x1, x2) polynomials;
conversion between the last two goes only through :func:`homogenize` and
:func:`dehomogenize`.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Mapping

import numpy as np

from .exact import GaussianRational, eye, is_exact, is_exact_scalar, matpow, to_exact


class MultiPoly:
    """Polynomial in ``nvars`` variables as a map exponent tuple -> coefficient.

    Zero coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        self.nvars = nvars
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = to_exact(c) if not isinstance(c, (complex, float)) else c
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self._terms = clean

    # construction -----------------------------------------------------------
    @classmethod
    def var(cls, index: int, nvars: int) -> "MultiPoly":
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): 1})

    @classmethod
    def variables(cls, nvars: int):
        return tuple(cls.var(i, nvars) for i in range(nvars))

    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls(nvars)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "MultiPoly":
        """Univariate polynomial from coefficients, lowest degree first."""
        return cls(1, {(k,): c for k, c in enumerate(coeffs)})

    # access -----------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), reverse=True)

    def coeff(self, exp: tuple):
        return self._terms.get(tuple(exp), Fraction(0))

    def coeffs(self) -> list:
        """Univariate coefficient list, lowest degree first."""
        if self.nvars != 1:
            raise ValueError("coeffs() is only defined for univariate polynomials")
        d = self.degree()
        return [self.coeff((k,)) for k in range(max(d, 0) + 1)]

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, n: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        return len(degs) == 1 and (n is None or degs == {n})

    def is_real(self) -> bool:
        return not any(isinstance(c, GaussianRational) or (isinstance(c, complex) and c.imag)
                       for c in self._terms.values())

    def is_exact(self) -> bool:
        return all(is_exact_scalar(c) for c in self._terms.values())

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"mixing polynomials in {self.nvars} and {other.nvars} variables")
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return MultiPoly(self.nvars, {e: c * other for e, c in self._terms.items()})
        other = self._coerce(other)
        terms: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = MultiPoly.const(1, self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if is_exact_scalar(other):
            return self == MultiPoly.const(other, self.nvars)
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        return f"MultiPoly({self.nvars}, {self.__str__()})"

    def __str__(self):
        if not self._terms:
            return "0"
        names = {1: ["x"], 2: ["y1", "y2"]}.get(self.nvars, [f"x{i}" for i in range(self.nvars)])
        parts = []
        for exp, c in self.items():
            mono = "*".join(f"{names[i]}^{k}" if k > 1 else names[i]
                            for i, k in enumerate(exp) if k)
            if not mono:
                parts.append(f"({c})")
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"({c})*{mono}")
        return " + ".join(parts)

    # evaluation -------------------------------------------------------------
    def __call__(self, *point):
        return self.evaluate(point)

    def evaluate(self, point):
        """Value at ``point`` (a tuple of scalars); exact on exact input."""
        point = tuple(point)
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates, got {len(point)}")
        total = Fraction(0)
        for exp, c in self._terms.items():
            term = c
            for x, k in zip(point, exp):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    def evaluate_matrices(self, mats) -> np.ndarray:
        """Value at a tuple of pairwise commuting square matrices."""
        mats = list(mats)
        if len(mats) != self.nvars:
            raise ValueError("arity mismatch")
        n = mats[0].shape[0]
        exact = all(is_exact(M) for M in mats)
        out = (eye(n) * 0) if exact else np.zeros((n, n), dtype=complex)
        powers: dict = {}
        for exp, c in self._terms.items():
            term = eye(n) if exact else np.eye(n, dtype=complex)
            for i, k in enumerate(exp):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = matpow(mats[i], k)
                    term = term @ powers[(i, k)]
            out = out + c * term
        return out

    def substitute(self, polys) -> "MultiPoly":
        """Compose: replace variable i by ``polys[i]``."""
        polys = list(polys)
        nv = polys[0].nvars
        result = MultiPoly.zero(nv)
        for exp, c in self._terms.items():
            term = MultiPoly.const(c, nv)
            for p, k in zip(polys, exp):
                term = term * (p ** k)
            result = result + term
        return result

    def homogenize(self, n: int) -> "MultiPoly":
        return homogenize(self, n)

    def dehomogenize(self) -> "MultiPoly":
        return dehomogenize(self)


def homogenize(p: MultiPoly, n: int) -> MultiPoly:
    """Map ``y1^a y2^b`` to ``x0^(n-a-b) x1^a x2^b`` (any number of variables)."""
    if p.degree() > n:
        raise ValueError(f"degree {p.degree()} exceeds homogenization degree {n}")
    return MultiPoly(p.nvars + 1, {(n - sum(e),) + e: c for e, c in p.terms.items()})


def dehomogenize(P: MultiPoly) -> MultiPoly:
    """Set the first variable to 1."""
    out: dict = {}
    for e, c in P.terms.items():
        out[e[1:]] = out.get(e[1:], 0) + c
    return MultiPoly(P.nvars - 1, out)


def from_sympy(expr, symbols) -> MultiPoly:
    """Convert a sympy expression in the given symbols (used by tests/demos only)."""
    import sympy

    poly = sympy.Poly(sympy.expand(expr), *symbols)
    terms = {}
    for monom, c in poly.terms():
        re, im = sympy.Rational(sympy.re(c)), sympy.Rational(sympy.im(c))
        val = GaussianRational(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
        terms[monom] = val
    return MultiPoly(len(symbols), terms)


# ---------------------------------------------------------------------------
# monomial indexing of the blown-up space

class MonomialIndex:
    """Degree-``d`` monomials in ``nvars`` variables, graded-lex, x0 > x1 > x2.

    For fixed degree this is plain lexicographic order on exponent tuples,
    largest first, so ``x0^d`` sits at position 0 and ``x2^d`` last.
    """

    def __init__(self, d: int, nvars: int = 3):
        if d < 0:
            raise ValueError("degree must be non-negative")
        self.degree = d
        self.nvars = nvars
        self.monomials = _monomials(d, nvars)
        self._pos = {m: k for k, m in enumerate(self.monomials)}

    def __len__(self):
        return len(self.monomials)

    def __iter__(self):
        return iter(self.monomials)

    def __getitem__(self, k):
        return self.monomials[k]

    def position(self, exp) -> int:
        exp = tuple(exp)
        if len(exp) != self.nvars or sum(exp) != self.degree or min(exp, default=0) < 0:
            raise ValueError(f"{exp} is not a degree-{self.degree} exponent")
        return self._pos[exp]


@lru_cache(maxsize=None)
def _monomials(d: int, nvars: int) -> tuple:
    if nvars == 0:
        return ((),) if d == 0 else ()
    return tuple(sorted((e for e in product(range(d + 1), repeat=nvars) if sum(e) == d),
                        reverse=True))


def monomial_position(idx: MonomialIndex, exp) -> int:
    return idx.position(exp)


__all__ = ["MultiPoly", "MonomialIndex", "homogenize", "dehomogenize", "monomial_position",
           "from_sympy"]
