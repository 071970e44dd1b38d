"""Frozen expansions, structural invariants, and suite checks for the
module characters."""

from fractions import Fraction as F

import pytest

import swqseries.qseries as qs
from swqseries.characters import (
    SWModuleId,
    all_module_ids,
    central_data,
    char_by_decomposition,
    f_over_eta,
    module_weight,
    ns_irr_char,
    superchar_leading_shift,
    sw_char,
    sw_superchar_theta,
    verify_character_suite,
)
from swqseries.forms import ThetaParams, theta


class TestCentralData:
    def test_m1(self):
        cd = central_data(1)
        assert cd.c == F(-5, 2)
        assert cd.h(1, 1) == 0
        assert cd.h(3, 1) == F(-1, 6)
        assert cd.h(5, 1) == 0
        assert cd.h(7, 1) == F(1, 2)

    def test_m2_weight(self):
        assert central_data(2).h(5, 1) == F(-2, 5)

    def test_weight_closed_form_and_symmetry(self):
        for m in (1, 2, 3):
            cd = central_data(m)
            for i in range(2 * m + 1):
                assert cd.h(2 * i + 1, 1) == F(i * (i - 2 * m), 2 * (2 * m + 1))
                assert cd.h(2 * i + 1, 1) == cd.h(2 * (2 * m - i) + 1, 1)

    def test_weights_table(self):
        cd = central_data(2)
        assert set(cd.weights) == {(2 * i + 1, 1) for i in range(7)}
        assert cd.weights[(5, 1)] == F(-2, 5)

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            central_data(0)

    def test_offset_matches_central_charge(self):
        # m^2/(2(2m+1)) - 1/16 = -c/24
        for m in (1, 2, 3, 4):
            cd = central_data(m)
            assert F(m * m, 2 * (2 * m + 1)) - F(1, 16) == -cd.c / 24


class TestModuleIds:
    def test_count_and_labels(self):
        ids = all_module_ids(2)
        assert [x.label for x in ids] == ["lambda:1", "lambda:2", "lambda:3", "pi:1", "pi:2"]

    def test_i_parameter(self):
        assert SWModuleId(2, "lambda", 3).i == 2
        assert SWModuleId(2, "pi", 2).i == 0

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            SWModuleId(1, "lambda", 3)
        with pytest.raises(ValueError):
            SWModuleId(1, "pi", 2)
        with pytest.raises(ValueError):
            SWModuleId(1, "sigma", 1)


class TestNsIrrChar:
    def test_vacuum_leading(self):
        s = ns_irr_char(1, 0, 0, 10)
        assert s.leading() == (F(5, 48), F(1))

    def test_negative_leading_exponent(self):
        s = ns_irr_char(1, 1, 0, 10)
        assert s.leading() == (F(-1, 16), F(1))

    def test_coefficients_nonnegative_integers(self):
        for m, i, n in ((1, 0, 0), (1, 1, 1), (2, 1, 0), (2, 2, 2)):
            s = ns_irr_char(m, i, n, 20)
            for _, c in s.terms():
                assert c.denominator == 1 and c >= 0


class TestSwChar:
    def test_vacuum_m1(self):
        s = sw_char(SWModuleId(1, "lambda", 1), 10)
        assert s.leading() == (F(5, 48), F(1))

    def test_lambda_top_m1(self):
        s = sw_char(SWModuleId(1, "lambda", 2), 10)
        assert s.leading() == (F(-1, 16), F(1))
        rhs = qs.truncate(
            qs.mul(f_over_eta(11), theta(ThetaParams(0, F(3, 2)), 12)), 10
        )
        assert qs.compare(s, rhs, 10) is None

    def test_leading_invariants(self):
        for m in (1, 2, 3):
            cd = central_data(m)
            for module in all_module_ids(m):
                s = sw_char(module, 6)
                e, c = s.leading()
                assert e == module_weight(module) - cd.c / 24
                assert c == (1 if module.kind == "lambda" else 2)

    def test_exponent_grid(self):
        for module in all_module_ids(2):
            s = sw_char(module, 8)
            lead, _ = s.leading()
            for e, _ in s.terms():
                step = e - lead
                assert step >= 0 and (2 * step).denominator == 1

    def test_coefficients_nonnegative_integers(self):
        for module in all_module_ids(1):
            for _, c in sw_char(module, 15).terms():
                assert c.denominator == 1 and c >= 0


class TestSuperchar:
    def test_lambda_top_m1(self):
        s = sw_superchar_theta(SWModuleId(1, "lambda", 2), 10)
        assert s.leading() == (F(0), F(1))

    def test_lambda_vacuum_m1(self):
        s = sw_superchar_theta(SWModuleId(1, "lambda", 1), 10)
        assert s.leading() == (F(1, 6), F(1))

    def test_lambda_top_integrality(self):
        for m in (1, 2):
            s = sw_superchar_theta(SWModuleId(m, "lambda", m + 1), 10)
            for _, c in s.terms():
                assert c.denominator == 1

    def test_leading_coefficients_documented(self):
        # apart from lambda:(m+1), the displayed formulas are not
        # integral; the pi leading coefficient comes out (4i+2)/(2m+1)
        for m in (1, 2, 3):
            for module in all_module_ids(m):
                s = sw_superchar_theta(module, 8)
                _, c = s.leading()
                if module.kind == "lambda":
                    assert c == 1
                else:
                    assert c == F(4 * module.i + 2, 2 * m + 1)

    def test_denominators_divide_level(self):
        for m in (1, 2):
            for module in all_module_ids(m):
                s = sw_superchar_theta(module, 8)
                for _, c in s.terms():
                    assert (2 * m + 1) % c.denominator == 0

    def test_leading_shift_is_one_sixteenth(self):
        for m in (1, 2, 3):
            for module in all_module_ids(m):
                assert superchar_leading_shift(module, 8) == F(1, 16)


class TestDecomposition:
    def test_m1_vacuum_order_20(self):
        module = SWModuleId(1, "lambda", 1)
        lhs = char_by_decomposition(module, 20)
        assert qs.compare(lhs, sw_char(module, 20), 20) is None

    def test_m1_top_order_20(self):
        module = SWModuleId(1, "lambda", 2)
        lhs = char_by_decomposition(module, 20)
        rhs = qs.truncate(
            qs.mul(f_over_eta(21), theta(ThetaParams(0, F(3, 2)), 22)), 20
        )
        assert qs.compare(lhs, rhs, 20) is None

    def test_m2_vacuum_order_15(self):
        module = SWModuleId(2, "lambda", 1)
        lhs = char_by_decomposition(module, 15)
        assert qs.compare(lhs, sw_char(module, 15), 15) is None

    def test_pi_rejected(self):
        with pytest.raises(ValueError):
            char_by_decomposition(SWModuleId(1, "pi", 1), 10)


class TestSuite:
    def test_m1_order_20(self):
        reports = verify_character_suite(1, 20)
        assert len(reports) == 2 + 1 + 3
        for r in reports:
            assert r.status == "pass", (r.identity_id, r.params, r.first_mismatch)

    def test_m2_order_15(self):
        reports = verify_character_suite(2, 15)
        for r in reports:
            assert r.status == "pass", (r.identity_id, r.params, r.first_mismatch)

    def test_perturbed_theta_index_fails(self):
        m = 1
        lam = sw_char(SWModuleId(m, "lambda", 1), 10)
        pi = sw_char(SWModuleId(m, "pi", 1), 10)
        wrong = qs.truncate(
            qs.mul(f_over_eta(11), theta(ThetaParams(0, F(3, 2)), 12)), 10
        )
        rep = qs.compare_report("char-pair-sum", {}, qs.add(lam, pi), wrong, 10)
        assert rep.status == "fail"
