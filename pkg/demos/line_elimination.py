"""
Elimination on the line
=======================

Bezout matrices count common zeros of two polynomials, and three of them give
a determinantal equation for the image of a rational map of the line.
"""
from fractions import Fraction

from curvelim import MultiPoly, bezout_matrix, line_image_detrep, sylvester_resultant

x = MultiPoly.var(0, 1)

# x^2 - 1 and x^2 - x share the root 1
p, q = x ** 2 - 1, x ** 2 - x
B = bezout_matrix(p, q, 2)
print("B(p, q) =")
print(B.entries)
print("kernel dimension:", B.kernel_dim)

# the bezoutian and the resultant agree up to sign
r = x ** 2 - 4
print("res(p, r) =", sylvester_resultant(p, r), " det B(p, r) =", bezout_matrix(p, r, 2).det())

# t -> (t, t^2) traces the parabola
one = MultiPoly.const(1, 1)
img = line_image_detrep(one, x, x ** 2, 2)
print("image equation:", img.polynomial)
for t in (Fraction(-2), Fraction(1, 3), Fraction(5, 2)):
    print(f"  t = {t}: vanishes = {img.vanishes_at(t)}")

# a cuspidal cubic, t -> (t^2, t^3)
img = line_image_detrep(one, x ** 2, x ** 3, 3)
print("cusp:", img.polynomial)
