"""
Elimination along a conic
=========================

The conic x0^2 = x1^2 + x2^2 is det(x0 D0 + x1 D1 - x2 D2) for 2x2 hermitian
matrices.  Vandermonde vectors of its points span the principal subspace, and
the generalized Bezout matrix restricted there counts common zeros along the
curve.
"""
import numpy as np

from curvelim import (MultiPoly, conic, curve_bezout, image_detrep, pencil_points,
                      principal_subspace, vandermonde_vector)

x0, x1, x2 = MultiPoly.variables(3)
dr = conic()
print("Delta =", dr.delta)

# points over (x1, x2) = (3, 4)
for pt in pencil_points(dr, 3, 4):
    print("point", pt.x, "kernel", list(pt.e))

# dimension of the principal subspace grows like n m
for n in (1, 2, 3):
    vn = principal_subspace(dr, n)
    pt = pencil_points(dr, 3, 4)[0]
    inside = vn.contains(vandermonde_vector(pt.x, pt.e, n))
    print(f"n = {n}: dim V_n = {vn.dim}, Vandermonde vector inside: {inside}")

# common zeros along the curve
for p, q in ((x1, x2), (x1, x0 - x2), (x0, x0)):
    gb = curve_bezout(p, q, dr, 1)
    print(f"({p}, {q}): {gb.kernel_dim} common zero(s)")

# the identity map reproduces the curve; a quadratic map gives a quartic image
print("identity image:", image_detrep(x0, x1, x2, dr, 1).polynomial)
img = image_detrep(x0 * x0, x0 * x1 + x2 * x2, x1 * x2, dr, 2)
print("quadratic image of degree", img.degree)
pt = pencil_points(dr, 12, 5)[0]
z = tuple(P.evaluate(pt.x) for P in (x0 * x0, x0 * x1 + x2 * x2, x1 * x2))
print("value at the image of", pt.x, ":", img.polynomial.evaluate(z))
print("float residuals are tiny:", np.isclose(img.residual(tuple(complex(v) for v in z)), 0))
