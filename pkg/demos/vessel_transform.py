"""
Rational transformation of a vessel
===================================

A diagonal two-operator vessel whose discriminant curve passes through a
chosen real point is pushed forward by a rational map with a basepoint
there.  The transformed vessel satisfies the axioms, the unreduced
discriminant vanishes identically, and after removing the basepoint the
discriminant cuts out the image curve.
"""
import numpy as np

from curvelim import (I, RationalPair, cayley_hamilton_check, discriminant,
                      discriminant_image_check, reduce_transformed, transform_vessel,
                      vessel_check)
from curvelim.curve import homogeneous_through_points
from curvelim.poly import dehomogenize
from curvelim.vessel import in_fiber_points, fiber_isomorphism_check, prescribed_curve_vessel

rng = np.random.default_rng(5)
V = prescribed_curve_vessel([(I, 1 + I)], [(1, 0, 1)], 3, [((1, -1), (1, 1, 0))], rng)
print("axioms:", vessel_check(V).residuals)
d = discriminant(V)
print("Delta =", d.polynomial)
print("in = out:", d.in_equals_out, " Cayley-Hamilton residual:", cayley_hamilton_check(V, d)[1])

# quadratic map through the basepoint (1, -1)
P = [dehomogenize(homogeneous_through_points([(1, 1, -1)], 2, rng)) for _ in range(3)]
rp = RationalPair(*P, 2)
print("r =", [str(p) for p in P])

T = transform_vessel(V, rp)
print("dim E' =", T.vessel.dim_e, " axioms hold:", vessel_check(T.vessel).ok)
print("unreduced discriminant is zero:", discriminant(T.vessel).polynomial.is_zero())

R = reduce_transformed(T)
print("basepoints:", [b.x for b in R.basepoints], " dim E'' =", R.vessel.dim_e)
print("Delta'' =", discriminant(R.vessel).polynomial)
rep = discriminant_image_check(R.vessel, rp, V, samples=20, rng=rng,
                               basepoint_count=len(R.basepoints))
print(f"image check: {rep.samples} samples, degree {rep.degree}, ok = {rep.ok}")

for lam, e, _ in in_fiber_points(V):
    print("fiber at", lam, "maps into the reduced fiber:",
          fiber_isomorphism_check(V, R, rp, lam, e).ok)
