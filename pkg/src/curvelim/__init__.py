"""Elimination theory on the line and along plane curves, with applications to
two-operator commutative vessels.

Exact arithmetic (``Fraction`` and Gaussian rationals in numpy object arrays)
is the default everywhere; floating point is used only for root finding and
for checks at sampled inexact curve points.
"""
from .exact import GaussianRational, I, Subspace, determinant, gaussian, kernel, matrix, rank
from .poly import MonomialIndex, MultiPoly, dehomogenize, homogenize
from .roots import ConvergenceError, cluster_roots, poly_roots
from .classical import (BezoutMatrix, DegenerateMapError, LineImage, bezout_matrix,
                        common_zero_count_line, line_image_detrep, sylvester_matrix,
                        sylvester_resultant)
from .curve import (CurvePoint, DetRep, GeneralizedBezout, ImageCurve, InfeasibleError,
                    PrincipalSubspace, basepoint_reduce, bezout_decomposition,
                    bilinear_vanishing_check, conic, curve_bezout, curve_common_zero_count,
                    decomposition_identity_holds, detrep_through_points, image_detrep,
                    line_points, pencil_points, principal_subspace, vandermonde_vector)
from .vessel import (RationalPair, Vessel, cayley_hamilton_check, discriminant,
                     discriminant_image_check, fiber_isomorphism_check, fibers,
                     reduce_transformed, transform_vessel, vessel_check, vessel_fixture,
                     vessel_from_operators)

__version__ = "0.1.0"
