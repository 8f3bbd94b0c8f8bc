"""Build the frozen oracle file ``tests/data/oracles.json``.

Everything here is computed with sympy (and numpy for roots) from inputs
drawn with a seeded ``random.Random``; nothing from ``curvelim`` is
imported.  Re-run only when the oracle set is deliberately changed:

    python3 tests/oracles/build_oracles.py
"""
import json
import random
from pathlib import Path

import numpy as np
import sympy as sp

OUT = Path(__file__).resolve().parents[1] / "data" / "oracles.json"
rnd = random.Random(20240611)


def q2s(q) -> str:
    q = sp.Rational(q)
    return f"{q.p}/{q.q}"


def c2j(c):
    re, im = sp.expand(sp.sympify(c)).as_real_imag()
    return q2s(re) if im == 0 else {"re": q2s(re), "im": q2s(im)}


def rand_q(lo=-4, hi=4, den=(1, 1, 1, 2, 3)):
    return sp.Rational(rnd.randint(lo, hi), rnd.choice(den))


def rand_g():
    return rand_q() + sp.I * (rand_q() if rnd.random() < 0.5 else 0)


def poly_terms(expr, gens):
    P = sp.Poly(sp.expand(expr), *gens)
    return [{"exp": list(m), "coeff": c2j(c)} for m, c in P.terms()]


# ---------------------------------------------------------------------------
def determinants():
    cases = []
    for size in (1, 2, 2, 3, 3, 4, 4, 5, 5, 6):
        M = sp.Matrix(size, size, lambda i, j: rand_g())
        if rnd.random() < 0.3 and size > 1:
            M[size - 1, :] = M[0, :] * 2 - M[1 % size, :]
        cases.append({"matrix": [[c2j(v) for v in M.row(i)] for i in range(size)],
                      "det": c2j(M.det()), "rank": M.rank()})
    return cases


def rand_univariate(deg, lead_nonzero=True):
    cs = [rand_q() for _ in range(deg + 1)]
    if lead_nonzero and cs[-1] == 0:
        cs[-1] = sp.Integer(1)
    return cs


def bezouts():
    x, y = sp.symbols("x y")
    cases = []
    for n in (1, 1, 2, 2, 3, 3, 4, 4, 5):
        a, b = rand_univariate(n), rand_univariate(n)
        if rnd.random() < 0.4:
            # planted common factor of degree 1
            r = rand_q()
            a = sp.Poly((x - r) * sum(c * x ** k for k, c in enumerate(a[:-1])), x).all_coeffs()[::-1]
            b = sp.Poly((x - r) * sum(c * x ** k for k, c in enumerate(b[:-1])), x).all_coeffs()[::-1]
            a = (list(a) + [0] * (n + 1))[:n + 1]
            b = (list(b) + [0] * (n + 1))[:n + 1]
        p = sum(c * x ** k for k, c in enumerate(a))
        q = sum(c * x ** k for k, c in enumerate(b))
        num = sp.expand(p * q.subs(x, y) - q * p.subs(x, y))
        quo = sp.cancel(num / (x - y))
        P = sp.Poly(quo, x, y)
        B = [[c2j(P.coeff_monomial(x ** i * y ** j)) for j in range(n)] for i in range(n)]
        g = sp.degree(sp.gcd(p, q), x) if not (p == 0 or q == 0) else None
        entry = {"p": [q2s(c) for c in a], "q": [q2s(c) for c in b], "n": n, "bezout": B,
                 "gcd_degree": int(g)}
        if sp.degree(p, x) == n and sp.degree(q, x) == n:
            entry["resultant"] = q2s(sp.resultant(p, q, x))
        cases.append(entry)
    return cases


def line_images():
    t, y1, y2 = sp.symbols("t y1 y2")
    maps = [(1, t, t ** 2), (1, t, t), (1, t ** 2, t), (1 + t ** 2, 2 * t, 1 - t ** 2),
            (t, t ** 2 - 1, t ** 3), (1, t ** 3 - t, t ** 2)]
    cases = []
    for m in maps:
        m = [sp.sympify(v) for v in m]
        n = max(sp.degree(v, t) for v in m)
        implicit = sp.resultant(m[0] * y1 - m[1], m[0] * y2 - m[2], t)
        implicit = sp.factor_list(implicit)
        # keep the squarefree part of the implicit equation
        sf = sp.Integer(1)
        for f, _ in implicit[1]:
            sf *= f
        cases.append({"p": [[q2s(c) for c in sp.Poly(v, t).all_coeffs()[::-1]] for v in m],
                      "n": int(n), "implicit": poly_terms(sf, (y1, y2))})
    return cases


def rand_hermitian(m, real=False):
    H = sp.zeros(m, m)
    for i in range(m):
        H[i, i] = rand_q()
        for j in range(i + 1, m):
            v = rand_q() + (0 if real else sp.I * rand_q())
            H[i, j], H[j, i] = v, sp.conjugate(v)
    return H


def pencils():
    x0, x1, x2 = sp.symbols("x0 x1 x2")
    cases = []
    for m, real in ((1, True), (2, True), (2, False), (3, True), (3, False), (4, False)):
        D = [rand_hermitian(m, real) for _ in range(3)]
        det = sp.expand((x0 * D[0] + x1 * D[1] - x2 * D[2]).det())
        cases.append({"D": [[[c2j(v) for v in M.row(i)] for i in range(m)] for M in D],
                      "delta": poly_terms(det, (x0, x1, x2))})
    return cases


def monomials(d):
    return sorted(((a, b, d - a - b) for a in range(d + 1) for b in range(d + 1 - a)),
                  reverse=True)


def principal_dims():
    """dim of the shift-constraint kernel, built independently of the package."""
    cases = []
    for m in (1, 2, 3):
        for n in (1, 2, 3):
            D = [rand_hermitian(m, real=True) for _ in range(3)]
            top, low = monomials(n - 1), monomials(n - 2) if n >= 2 else []
            L = sp.zeros(len(low) * m, len(top) * m)
            for r, j in enumerate(low):
                for a, Dk in enumerate((D[0], D[1], -D[2])):
                    u = [0, 0, 0]
                    u[a] = 1
                    c = top.index(tuple(ji + ui for ji, ui in zip(j, u)))
                    L[r * m:(r + 1) * m, c * m:(c + 1) * m] = Dk
            dim = len(top) * m - (L.rank() if low else 0)
            cases.append({"D": [[[c2j(v) for v in M.row(i)] for i in range(m)] for M in D],
                          "n": n, "dim": dim})
    return cases


def roots():
    cases = []
    for coeffs in ([-6, 11, -6, 1], [1, 0, 1], [2, -3, 0, 0, 1], [-1, 0, 0, 0, 0, 1],
                   [5, 4, 3, 2, 1]):
        r = np.roots(coeffs[::-1])
        r = sorted(r, key=lambda z: (round(z.real, 8), round(z.imag, 8)))
        cases.append({"coeffs": coeffs, "roots": [[float(z.real), float(z.imag)] for z in r]})
    return cases


def vessel_discriminants():
    """det(y1 s2 - y2 s1 + g) for fixed small hermitian data."""
    y1, y2 = sp.symbols("y1 y2")
    cases = []
    data = [
        ([[2]], [[4]], [[2]]),
        ([[2, 2], [2, -1]], [[2, 2], [2, 1]], [[2, 2], [2, -3]]),
    ]
    for s1, s2, g in data:
        S1, S2, G = sp.Matrix(s1), sp.Matrix(s2), sp.Matrix(g)
        det = sp.expand((y1 * S2 - y2 * S1 + G).det())
        cases.append({"sigma1": [[q2s(v) for v in r] for r in s1],
                      "sigma2": [[q2s(v) for v in r] for r in s2],
                      "gamma": [[q2s(v) for v in r] for r in g],
                      "delta": poly_terms(det, (y1, y2))})
    return cases


def main():
    data = {"determinants": determinants(), "bezouts": bezouts(), "line_images": line_images(),
            "pencils": pencils(), "principal_dims": principal_dims(), "roots": roots(),
            "vessel_discriminants": vessel_discriminants()}
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1, sort_keys=True) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
