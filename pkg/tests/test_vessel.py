import warnings
from fractions import Fraction

import numpy as np
import pytest

from conftest import proportional
from curvelim.curve import homogeneous_through_points
from curvelim.exact import I, eye, matrix, zeros
from curvelim.jsonio import decode_matrix, decode_poly
from curvelim.poly import MultiPoly, dehomogenize
from curvelim.vessel import (AXIOMS, BasepointAtSpectrumError, ConventionError, RationalPair,
                             Vessel, cayley_hamilton_check, discriminant,
                             discriminant_image_check, fiber_isomorphism_check, fibers,
                             in_fiber_points, linear_fixture, one_dim_fixture, out_fiber_points,
                             prescribed_curve_vessel, reduce_transformed, sample_vessel_curve,
                             transform_vessel, vessel_check, vessel_fixture, zero_vessel)

y1, y2 = MultiPoly.variables(2)
ONE = MultiPoly.const(1, 2)


def prescribed(m, seed=5):
    """Diagonal vessel with one planted conjugate point and one real basepoint (1, -1)."""
    phi = (1, 0, 1, 0)[:m] if m > 2 else (1, 0)
    e = (1, 1, 0, 0)[:m]
    rng = np.random.default_rng(seed)
    V = prescribed_curve_vessel([(I, 1 + I)], [phi], m, [((1, -1), e)], rng)
    return V, rng


def basepoint_map(n, rng):
    P = [dehomogenize(homogeneous_through_points([(1, 1, -1)], n, rng)) for _ in range(3)]
    return RationalPair(*P, n)


# axioms ------------------------------------------------------------------------

def test_one_dim_fixture():
    V = one_dim_fixture()
    assert (V.Phi == matrix([[1]])).all()
    assert V.sigma1[0, 0] == 2 and V.sigma2[0, 0] == 4 and V.gamma_in[0, 0] == 2
    rep = vessel_check(V)
    assert rep.ok and all(rep.residuals[k] == 0 for k in AXIOMS)
    d = discriminant(V)
    assert d.polynomial == 4 * y1 - 2 * y2 + 2 and d.in_equals_out


def test_zero_vessel_is_valid():
    A1 = matrix([[1, 2], [2, 0]])
    A2 = A1 @ A1
    V = zero_vessel(A1, A2, 2)
    assert vessel_check(V).ok
    R, res = cayley_hamilton_check(V)
    assert res == 0 and R.shape[1] == 0


def test_perturbed_gamma_in_is_caught():
    V = one_dim_fixture()
    eps = Fraction(1, 1000)
    W = Vessel(V.A1, V.A2, V.Phi, V.sigma1, V.sigma2, V.gamma_in + eps, V.gamma_out)
    rep = vessel_check(W)
    # gamma_in enters its own axiom and the linkage identity
    assert rep.failing == ["gamma_in", "linkage"]


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        Vessel(eye(2), eye(2), zeros(1, 3), eye(1), eye(1), eye(1), eye(1))


def test_linear_fixture():
    A1 = matrix([[I, 1], [0, 2 + I]])
    alpha, beta = Fraction(3), Fraction(-2)
    V = linear_fixture(A1, alpha, beta)
    assert vessel_check(V).ok
    assert (V.sigma2 == alpha * V.sigma1).all()
    assert (V.gamma_in == beta * V.sigma1).all()
    d = discriminant(V).polynomial
    line = alpha * y1 - y2 + beta
    assert proportional(d, line ** V.dim_e)
    assert cayley_hamilton_check(V)[1] == 0


def test_vessel_fixture_examples():
    V = vessel_fixture((1, 2, 3), (2, -1, 5), (2 * I, 1, 0))
    assert vessel_check(V).ok and V.dim_e == 2
    d = discriminant(V)
    assert d.in_equals_out and not d.polynomial.is_zero()
    assert cayley_hamilton_check(V, d)[1] == 0
    with pytest.raises(ValueError):
        vessel_fixture((1, 1), (0, 0), (0, 0))


def test_discriminant_against_oracle(oracles):
    for case in oracles["vessel_discriminants"]:
        s1, s2, g = (decode_matrix(case[k]) for k in ("sigma1", "sigma2", "gamma"))
        h = s1.shape[0]
        V = zero_vessel(zeros(h, h), zeros(h, h), h, s1, s2)
        V = Vessel(V.A1, V.A2, V.Phi, s1, s2, g, g)
        assert discriminant(V).polynomial == decode_poly(case["delta"], 2)


def test_discriminant_of_zero_coupling():
    s1 = matrix([[1, 0], [0, 2]])
    s2 = matrix([[0, 1], [1, 0]])
    V = zero_vessel(zeros(1, 1), zeros(1, 1), 2, s1, s2)
    assert discriminant(V).polynomial == 2 * y2 ** 2 - y1 ** 2


# fibers -------------------------------------------------------------------------

def test_fibers():
    V = one_dim_fixture()
    Ein, Eout = fibers(V, (0, 1))
    assert Ein.dim == 1 and Eout.dim == 1
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        Ein, Eout = fibers(V, (0, 0))
    assert Ein.dim == 0 and Eout.dim == 0 and caught
    s = matrix([[1, 0], [0, 3]])
    V = zero_vessel(zeros(1, 1), zeros(1, 1), 2, s, s)
    assert fibers(V, (2, 2))[0].dim == 2


def test_in_and_out_fiber_points_lie_in_fibers():
    V, _ = prescribed(3)
    for lam, e, _ in in_fiber_points(V):
        assert not any(V.in_pencil(*lam) @ e)
    for lam, e, _ in out_fiber_points(V):
        assert not any(V.out_pencil(*lam) @ e)


# transformation -----------------------------------------------------------------

def test_identity_transform_reproduces_vessel():
    V = vessel_fixture((1, 2, 3), (2, -1, 5), (2 * I, 1, 0))
    T = transform_vessel(V, RationalPair.identity())
    Vp = T.vessel
    assert (T.basis == eye(V.dim_e)).all()
    for f in ("A1", "A2", "Phi", "sigma1", "sigma2", "gamma_in", "gamma_out"):
        assert (getattr(Vp, f) == getattr(V, f)).all(), f


def test_printed_sigma_order_is_rejected():
    V = vessel_fixture((1, 2, 3), (2, -1, 5), (2 * I, 1, 0))
    with pytest.raises(ConventionError):
        transform_vessel(V, RationalPair.identity(), sigma_order="printed")
    T = transform_vessel(V, RationalPair.identity(), sigma_order="printed", check=False)
    assert set(vessel_check(T.vessel).failing) >= {"coupling"}


def test_zero_coupling_transform():
    A1 = matrix([[1, 0], [0, 2]])
    V = zero_vessel(A1, A1 @ A1, 1, matrix([[1]]), matrix([[3]]))
    T = transform_vessel(V, RationalPair(ONE, y1, y1 ** 2, 2))
    assert not T.vessel.Phi.any() and vessel_check(T.vessel).ok


def test_basepoint_at_spectrum():
    V = one_dim_fixture()                       # A1^* = [-i]
    p0 = y1 * y1 + 1
    with pytest.raises(BasepointAtSpectrumError):
        transform_vessel(V, RationalPair(p0, y1, y2, 2))


def test_one_dim_under_parabola_map():
    V = one_dim_fixture()
    rp = RationalPair(ONE, y1, y1 ** 2, 2)
    T = transform_vessel(V, rp)
    assert (T.vessel.A1 == V.A1).all() and (T.vessel.A2 == V.A1 @ V.A1).all()
    R = reduce_transformed(T)
    assert R.basepoints == [] and R.vessel.dim_e == 2
    rep = discriminant_image_check(R.vessel, rp, V, samples=20, basepoint_count=0)
    assert rep.ok and rep.degree == 2
    # the image of the line y2 = 2 y1 + 1 under (y1, y1^2) is the parabola
    assert proportional(discriminant(R.vessel).polynomial, y2 - y1 ** 2)
    for lam, e, _ in in_fiber_points(V):
        assert fiber_isomorphism_check(V, R, rp, lam, e).ok
    lam = (Fraction(3), Fraction(7))
    assert fiber_isomorphism_check(V, R, rp, lam, matrix([[1]])[:, 0]).ok


def test_line_map_of_one_dim_fixture():
    V = one_dim_fixture()
    rp = RationalPair(ONE, y1, 2 * y1 + 1, 1)
    R = reduce_transformed(transform_vessel(V, rp))
    rep = discriminant_image_check(R.vessel, rp, V, samples=20)
    assert rep.ok and proportional(discriminant(R.vessel).polynomial, 2 * y1 - y2 + 1)


def test_linear_fixture_under_parabola_map():
    A1 = matrix([[I, 1], [0, 2 + I]])
    V = linear_fixture(A1, Fraction(2), Fraction(1))
    rp = RationalPair(ONE, y1, y1 ** 2, 2)
    R = reduce_transformed(transform_vessel(V, rp))
    assert vessel_check(R.vessel).ok
    for s in (Fraction(1, 2), Fraction(-3), Fraction(5, 4)):
        assert discriminant(R.vessel).polynomial.evaluate((s, s * s)) == 0


@pytest.mark.parametrize("m", [2, 3])
def test_transform_and_reduce_with_basepoint(m):
    V, rng = prescribed(m)
    assert vessel_check(V).ok and discriminant(V).in_equals_out
    assert cayley_hamilton_check(V)[1] == 0
    rp = basepoint_map(2, rng)
    T = transform_vessel(V, rp)
    assert T.vessel.dim_e == 2 * m and vessel_check(T.vessel).ok
    d = discriminant(T.vessel)
    assert d.in_equals_out and d.polynomial.is_zero()    # unreduced: basepoint kills it
    R = reduce_transformed(T)
    assert R.exact and [b.x for b in R.basepoints] == [(1, 1, -1)]
    assert R.vessel.dim_e == 2 * m - 1 and vessel_check(R.vessel).ok
    assert discriminant(R.vessel).in_equals_out
    rep = discriminant_image_check(R.vessel, rp, V, samples=20, basepoint_count=1)
    assert rep.ok and rep.samples >= 20


def test_fiber_map_at_general_points():
    V, rng = prescribed(2)
    rp = basepoint_map(2, rng)
    R = reduce_transformed(transform_vessel(V, rp))
    checked = 0
    for y in sample_vessel_curve(V, rp, 12, np.random.default_rng(1)):
        E, _ = fibers(V, y)
        if E.dim != 1:
            continue
        rep = fiber_isomorphism_check(V, R, rp, y, E.basis[:, 0])
        assert rep.ok, (y, rep)
        checked += 1
    assert checked >= 10


def test_out_fiber_map():
    V, rng = prescribed(3)
    rp = basepoint_map(2, rng)
    R = reduce_transformed(transform_vessel(V, rp))
    pts = out_fiber_points(V)
    assert pts
    for lam, e, v in pts:
        rep = fiber_isomorphism_check(V, R, rp, lam, e, out_vector=v)
        assert rep.out_residual == 0


def test_reduced_vessel_float_point_residuals_small():
    V, rng = prescribed(3)
    rp = basepoint_map(2, rng)
    R = reduce_transformed(transform_vessel(V, rp))
    for y in sample_vessel_curve(V, rp, 10, np.random.default_rng(4)):
        if isinstance(y[0], complex):
            E, _ = fibers(V, y)
            rep = fiber_isomorphism_check(V, R, rp, y, E.basis[:, 0])
            assert not rep.exact and rep.in_residual < 1e-8


def test_cayley_hamilton_on_one_dim():
    V = one_dim_fixture()
    R, res = cayley_hamilton_check(V)
    # 4i - 2(2i + 1) + 2 = 0
    assert res == 0 and R.shape == (1, 1)
