"""Inverse Cartan data, the one-parameter sum families, fermionic
character forms, and the auxiliary identities."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from swqseries import characters as ch
from swqseries import fermionic as fm
from swqseries import forms
from swqseries import qseries as qs

F = Fraction


# -- inverse Cartan matrix ---------------------------------------------------


def test_inverse_cartan_p3_frozen():
    B = fm.inverse_cartan_D(3).B
    assert B == (
        (F(1), F(1, 2), F(1, 2)),
        (F(1, 2), F(3, 4), F(1, 4)),
        (F(1, 2), F(1, 4), F(3, 4)),
    )


def _cartan_D(p):
    a = [[F(0)] * p for _ in range(p)]
    for i in range(p):
        a[i][i] = F(2)
    for i in range(p - 3):
        a[i][i + 1] = a[i + 1][i] = F(-1)
    a[p - 3][p - 2] = a[p - 2][p - 3] = F(-1)
    a[p - 3][p - 1] = a[p - 1][p - 3] = F(-1)
    return a


@pytest.mark.parametrize("p", [4, 5, 6])
def test_inverse_cartan_inverts_and_symmetric(p):
    B = fm.inverse_cartan_D(p).B
    a = _cartan_D(p)
    for i in range(p):
        for j in range(p):
            assert B[i][j] == B[j][i]
            assert B[i][j] > 0
            prod = sum(B[i][k] * a[k][j] for k in range(p))
            assert prod == (1 if i == j else 0)


def test_inverse_cartan_rejects_small_p():
    with pytest.raises(ValueError):
        fm.inverse_cartan_D(2)


def test_sum_spec_validation():
    with pytest.raises(ValueError):
        fm.FermionicSumSpec(3, -1, 0, 1, 0)
    with pytest.raises(ValueError):
        fm.FermionicSumSpec(3, 4, 0, 1, 0)
    with pytest.raises(ValueError):
        fm.FermionicSumSpec(3, 0, 2, 1, 0)
    with pytest.raises(ValueError):
        fm.FermionicSumSpec(3, 0, 0, 3, 0)
    with pytest.raises(ValueError):
        fm.FermionicSumSpec(3, 0, 0, 1, 2)


# -- enumerator against the naive box oracle ---------------------------------


@settings(max_examples=25, deadline=None)
@given(
    p=st.integers(3, 4),
    lam_frac=st.fractions(0, 1),
    sigma=st.integers(0, 1),
    variant=st.integers(1, 2),
    order=st.integers(4, 7),
)
def test_enumerator_matches_naive(p, lam_frac, sigma, variant, order):
    lam = int(lam_frac * p)
    spec = fm.FermionicSumSpec(p, lam, sigma, variant, parity=sigma)
    B, lin, const = fm._warnaar_data(spec)
    fast = fm._multi_sum(B, lin, const, sigma, F(order), 1)
    naive = fm._naive_multi_sum(B, lin, const, sigma, F(order), 1)
    assert qs.compare(fast, naive, order) is None


def test_enumerator_matches_naive_negative_linear():
    # lam = p, variant 1 drives one linear coefficient negative
    spec = fm.FermionicSumSpec(3, 3, 1, 1, parity=1)
    B, lin, const = fm._warnaar_data(spec)
    assert min(lin) < 0
    fast = fm._multi_sum(B, lin, const, 1, F(8), 1)
    naive = fm._naive_multi_sum(B, lin, const, 1, F(8), 1)
    assert qs.compare(fast, naive, 8) is None


def test_enumerator_matches_naive_half_grid():
    B = fm.inverse_cartan_D(3).B
    Q = tuple(tuple(x / 2 for x in row) for row in B)
    lin = [F(1, 2)] * 3
    fast = fm._multi_sum(Q, lin, F(0), 1, F(5), 2)
    naive = fm._naive_multi_sum(Q, lin, F(0), 1, F(5), 2)
    assert qs.compare(fast, naive, 5) is None


def test_enumerator_rejects_negative_entry():
    Q = ((F(1), F(-1, 4)), (F(-1, 4), F(1)))
    with pytest.raises(ValueError):
        fm._multi_sum(Q, [F(0), F(0)], F(0), None, F(4), 1)


# -- the two sum families ----------------------------------------------------


def test_warnaar_v1_vacuum_frozen():
    spec = fm.FermionicSumSpec(3, 0, 0, 1, parity=0)
    lhs = fm.warnaar_lhs(spec, 10)
    rhs = fm.warnaar_rhs(spec, 10)
    assert qs.compare(lhs, rhs, 10) is None
    assert [lhs.coeff(k) for k in range(8)] == [1, 1, 2, 5, 7, 11, 17, 25]


def test_warnaar_v2_frozen():
    spec = fm.FermionicSumSpec(3, 2, 0, 2, parity=0)
    lhs = fm.warnaar_lhs(spec, 10)
    rhs = fm.warnaar_rhs(spec, 10)
    assert qs.compare(lhs, rhs, 10) is None
    assert [lhs.coeff(k) for k in range(11)] == [1, 0, 1, 1, 2, 5, 7, 10, 13, 20, 27]


def test_zero_tuple_exponent():
    # the all-zero tuple carries exponent lam*sigma/2 - sigma*p/4
    _, _, const = fm._warnaar_data(fm.FermionicSumSpec(3, 2, 1, 1, parity=1))
    assert const == F(1, 4)
    _, _, const = fm._warnaar_data(fm.FermionicSumSpec(5, 0, 1, 2, parity=1))
    assert const == F(-5, 4)


def test_rhs_inner_coefficient_documented():
    # variant 2, lam=0, sigma=0: the inner sum has coefficient 2 at q^3
    # (weights 2n+1 at n=1 and n=-1 combine to 3 - 1)
    spec = fm.FermionicSumSpec(3, 0, 0, 2, parity=0)
    rhs = fm.warnaar_rhs(spec, 11)
    inner = qs.mul(rhs, qs.pochhammer(1, 1, -1, None, 11))
    assert inner.coeff(3) == 2
    assert rhs.coeff(3) == 5


def test_rhs_lambda_p_sigma1_variant1_same_exponents():
    # lam - sigma*p = 0 collapses the exponents to p*n^2
    a = fm.warnaar_rhs(fm.FermionicSumSpec(3, 3, 1, 1, parity=1), 8)
    b = fm.warnaar_rhs(fm.FermionicSumSpec(3, 0, 0, 1, parity=0), 8)
    assert qs.compare(a, b, 8) is None


def test_rhs_lambda_p_variant2_vanishes():
    # pairing n <-> -n-1+sigma cancels every term of the variant-2
    # single sum at lam = p; the multi-sum side stays positive
    for sigma in (0, 1):
        spec = fm.FermionicSumSpec(3, 3, sigma, 2, parity=sigma)
        assert fm.warnaar_rhs(spec, 12).is_zero()
        assert not fm.warnaar_lhs(spec, 12).is_zero()


def test_verify_warnaar_p3():
    reports = fm.verify_warnaar(3, 12)
    assert len(reports) == 16
    assert reports[0].identity_id == "warnaar-v1"
    assert reports[0].params == {"p": 3, "lambda": 0, "sigma": 0}
    fails = {
        (r.identity_id, r.params["lambda"], r.params["sigma"]): r.first_mismatch
        for r in reports
        if r.status == "fail"
    }
    assert fails == {
        ("warnaar-v2", 3, 0): (F(0), F(1), F(0)),
        ("warnaar-v2", 3, 1): (F(3), F(2), F(0)),
    }


def test_verify_warnaar_p4_all_pass_except_lambda_p_v2():
    reports = fm.verify_warnaar(4, 10)
    for r in reports:
        expected = "fail" if r.identity_id == "warnaar-v2" and r.params["lambda"] == 4 else "pass"
        assert r.status == expected


def test_verify_warnaar_rejects_small_p():
    with pytest.raises(ValueError):
        fm.verify_warnaar(2, 10)


def test_perturbed_matrix_fails():
    spec = fm.FermionicSumSpec(3, 0, 0, 1, parity=0)
    B, lin, const = fm._warnaar_data(spec)
    Bp = tuple(
        tuple(x + (F(1, 7) if i == j == 0 else 0) for j, x in enumerate(row))
        for i, row in enumerate(B)
    )
    lhs = fm._multi_sum(Bp, lin, const, 0, F(10), 1)
    assert qs.compare(lhs, fm.warnaar_rhs(spec, 10), 10) is not None


# -- fermionic character forms -----------------------------------------------


def test_shifts_m1_frozen():
    shifts = {}
    for mid in ch.all_module_ids(1):
        _, shift = fm.fermionic_sw_char(mid, 12)
        shifts[mid.label] = shift
    assert shifts == {
        "lambda:1": F(-5, 48),
        "lambda:2": F(1, 16),
        "pi:1": F(-5, 48),
    }


@pytest.mark.parametrize("m", [1, 2, 3])
def test_shift_closed_form(m):
    # observed: shift = 1/16 - (m-i)^2 / (2(2m+1)) for both families
    for mid in ch.all_module_ids(m):
        _, shift = fm.fermionic_sw_char(mid, 10)
        j = m - mid.i
        assert shift == F(1, 16) - F(j * j, 2 * (2 * m + 1))


@pytest.mark.parametrize("m", [1, 2])
def test_fermionic_matches_char(m):
    for mid in ch.all_module_ids(m):
        rep = fm.fermionic_char_report(mid, 20)
        assert rep.status == "pass"
        assert rep.identity_id == "fermionic-char"
        assert rep.params["m"] == m
        assert rep.params["module"] == mid.label


def test_fermionic_char_below_lead_rejected():
    with pytest.raises(ValueError):
        fm.fermionic_sw_char(ch.SWModuleId(1, "lambda", 1), -1)


# -- auxiliary identities ----------------------------------------------------


def test_half_grid_product_frozen():
    inv = qs.invert(qs.pochhammer(F(1, 2), F(1, 2), -1, None, 4))
    assert [inv.coeff(F(k, 2)) for k in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_durfee_forms_agree_with_product():
    target = qs.truncate(
        qs.invert(qs.pochhammer(F(1, 2), F(1, 2), -1, None, 13)), 12
    )
    for k in range(4):
        assert qs.compare(fm._durfee_half(k, F(12)), target, 12) is None
        assert qs.compare(fm._durfee_mixed(k, F(12)), target, 12) is None


def test_euler_sum_is_eta():
    assert qs.compare(fm._euler_eta_sum(F(15)), forms.eta(15), 15) is None


def test_double_product_leading_term():
    lhs = qs.mul(
        ch.f_over_eta(F(21)), forms.dtheta(forms.ThetaParams(1, F(3, 2)), F(22))
    )
    assert lhs.leading() == (F(5, 48), F(1))


def test_eta_double_sum_leading_term():
    assert fm._eta_double_sum(F(10)).leading() == (F(5, 48), F(1))


def test_verify_aux_identities():
    reports = fm.verify_aux_identities(25)
    assert [r.identity_id for r in reports] == [
        "durfee-half",
        "durfee-mixed",
        "durfee-half",
        "durfee-mixed",
        "durfee-half",
        "durfee-mixed",
        "durfee-half",
        "durfee-mixed",
        "euler-eta",
        "dtheta-eta-double-product",
        "eta-double-sum",
        "theta-double-sum",
    ]
    assert all(r.status == "pass" for r in reports)


def test_verify_aux_rejects_low_order():
    with pytest.raises(ValueError):
        fm.verify_aux_identities(5)
