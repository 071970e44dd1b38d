"""Polynomial arithmetic, the singlet curve, the binomial-sum
identities, and the interpolation/sign suite."""

from fractions import Fraction

import pytest

from swqseries import characters as ch
from swqseries import zhupoly as zp

F = Fraction


# -- polynomial arithmetic ----------------------------------------------------


def test_poly_normalizes_trailing_zeros():
    assert zp.poly([1, 2, 0, 0]).coeffs == (F(1), F(2))
    assert zp.poly([0, 0]).is_zero()
    assert zp.poly([]).degree() == -1


def test_ratpoly_rejects_trailing_zero():
    with pytest.raises(ValueError):
        zp.RatPoly((F(1), F(0)))


def test_arithmetic_and_eval():
    a = zp.poly([1, 2])
    b = zp.poly([0, 1, 1])
    assert zp.add(a, b).coeffs == (F(1), F(3), F(1))
    assert zp.sub(a, a).is_zero()
    assert zp.mul(a, b).coeffs == (F(0), F(1), F(3), F(2))
    assert zp.scale(a, F(1, 2)).coeffs == (F(1, 2), F(1))
    assert a(3) == 7
    assert b(F(1, 2)) == F(3, 4)


def test_compose_and_shift():
    a = zp.poly([0, 0, 1])
    assert zp.shift_arg(a, 1).coeffs == (F(1), F(2), F(1))
    b = zp.poly([1, 1])
    assert zp.compose(a, b)(2) == 9


def test_from_roots():
    p = zp.from_roots([1, -1])
    assert p.coeffs == (F(-1), F(0), F(1))
    assert p(1) == 0 and p(-1) == 0


def test_binom_poly():
    c2 = zp.binom_poly(2)
    assert c2.coeffs == (F(0), F(-1, 2), F(1, 2))
    assert zp.binom_poly(0).coeffs == (F(1),)
    assert zp.binom_poly(3, arg_shift=1)(4) == 10
    for t in range(8):
        assert zp.binom_poly(3)(t) == (t * (t - 1) * (t - 2)) // 6
    with pytest.raises(ValueError):
        zp.binom_poly(-1)


def test_lagrange():
    L = zp.lagrange([(0, 1), (1, 3), (2, 9)])
    assert L(0) == 1 and L(1) == 3 and L(2) == 9
    assert L.degree() == 2
    with pytest.raises(ValueError):
        zp.lagrange([(0, 1), (0, 2)])


# -- singlet curve -------------------------------------------------------------


def test_curve_constants_frozen():
    assert zp.singlet_curve(1).Cm == 6
    assert zp.singlet_curve(2).Cm == F(125, 18)


def test_curve_parametrization_m1_frozen():
    c = zp.singlet_curve(1)
    assert c.x_param.coeffs == (F(0), F(-1, 3), F(1, 6))
    assert c.y_param.coeffs == (F(0), F(1, 3), F(-1, 2), F(1, 6))


@pytest.mark.parametrize("m", range(1, 9))
def test_curve_identity_symbolic(m):
    c = zp.singlet_curve(m)
    residual = zp.sub(zp.mul(c.y_param, c.y_param), zp.compose(c.p_x, c.x_param))
    assert residual.is_zero()


def test_curve_identity_pointwise():
    c = zp.singlet_curve(1)
    for t in range(8):
        assert c.y_param(t) ** 2 - c.p_x(c.x_param(t)) == 0


def test_curve_rejects_bad_m():
    with pytest.raises(ValueError):
        zp.singlet_curve(0)


def test_wrong_constant_breaks_parametrization():
    c = zp.singlet_curve(1)
    wrong = zp.scale(c.p_x, 6)
    residual = zp.sub(zp.mul(c.y_param, c.y_param), zp.compose(wrong, c.x_param))
    assert not residual.is_zero()


# -- weight-root polynomial ----------------------------------------------------


def test_f1_frozen():
    assert zp.f_m_poly(1).coeffs == (F(0), F(0), F(-1, 12), F(-1, 3), F(1))


@pytest.mark.parametrize("m", range(1, 9))
def test_f_m_monic_and_alt_form(m):
    f = zp.f_m_poly(m)
    assert f.degree() == 3 * m + 1
    assert f.coeffs[-1] == 1
    assert zp.sub(f, zp.f_m_alt_poly(m)).is_zero()
    assert f(ch.central_data(m).h(2 * m + 1, 1)) == 0


@pytest.mark.parametrize("m", range(1, 11))
def test_weight_symmetry(m):
    cd = ch.central_data(m)
    for i in range(2 * m + 1):
        assert cd.h(2 * i + 1, 1) == cd.h(2 * (2 * m - i) + 1, 1)


# -- binomial-sum polynomial -----------------------------------------------


def test_phi_values_frozen():
    phi = zp.phi_tilde(1)
    assert phi(4) == -2
    assert phi.degree() == 8
    for t in range(3):
        assert phi(t) == 0


@pytest.mark.parametrize("m", [1, 2, 3])
def test_phi_vanishes_low(m):
    phi = zp.phi_tilde(m)
    assert phi.degree() == 6 * m + 2
    for t in range(2 * m + 1):
        assert phi(t) == 0


def test_constants_frozen():
    assert zp.a_bar_constant(1) == F(-2, 5)
    assert zp.b_constant(1) == F(-9, 10)


@pytest.mark.parametrize("m", range(1, 6))
def test_verify_phi_identities(m):
    reports = zp.verify_phi_identities(m)
    assert [r.identity_id for r in reports] == ["phi-binom-product", "phi-fm-composition"]
    for r in reports:
        assert r.status == "pass"
        assert r.params == {"m": m}


def testpoly_report_mismatch():
    rep = zp.poly_report("x", {}, zp.poly([1, 2]), zp.poly([1, 3]), 0.0)
    assert rep.status == "fail"
    assert rep.first_mismatch == (F(1), F(2), F(3))


# -- interpolation and signs ---------------------------------------------------


@pytest.mark.parametrize("m", range(1, 11))
def test_interpolation_degree(m):
    assert zp.interpolation_L(m).degree() == m - 1


def test_interpolation_m1_m2_values():
    assert zp.interpolation_L(1).coeffs == (F(1),)
    L2 = zp.interpolation_L(2)
    cd = ch.central_data(2)
    assert L2(cd.h(11, 1)) == 1
    assert L2(cd.h(13, 1)) == 6


def test_r_poly_m1():
    assert zp.r_poly(1).coeffs == (F(1),)


def test_s_values_m1_frozen():
    r, den = zp.r_poly(1), zp._s_denominator(1)
    assert r(0) / den(0) == F(-1, 3)
    assert r(1) / den(1) == F(-1, 4)
    # recursion at t=1: s(1)*2*4 = 2*1*3*s(0)
    assert (r(1) / den(1)) * 2 * 4 == 2 * 1 * 3 * (r(0) / den(0))


@pytest.mark.parametrize("m", range(1, 11))
def test_verify_s_properties(m):
    rep = zp.verify_s_properties(m)
    assert rep.status == "pass"
    assert rep.identity_id == "s-properties"
    assert rep.params == {"m": m}


def test_zhupoly_rejects_bad_m():
    for fn in (zp.f_m_poly, zp.phi_tilde, zp.verify_phi_identities,
               zp.interpolation_L, zp.verify_s_properties):
        with pytest.raises(ValueError):
            fn(0)
