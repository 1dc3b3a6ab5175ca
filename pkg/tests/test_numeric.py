import json
from fractions import Fraction

import mpmath
import pytest
from mpmath import mpf

from teven.formula import PiMultiple, weighted_formula
from teven.numeric import (
    DomainError,
    contractions,
    exact_value,
    mtv_direct,
    mtv_numeric,
    mtv_star_numeric,
    numeric_rhs,
    t_even,
    verify_formula_numeric,
    zeta_even,
)
from teven.partitions import mtv_formula, mtv_star_formula
from teven.poly import MultiPoly

PREC = 256


def test_zeta_and_t_values():
    with mpmath.workprec(PREC + 40):
        pi = mpmath.pi
        assert zeta_even(1).contains(pi**2 / 6)
        assert zeta_even(2).contains(pi**4 / 90)
        assert zeta_even(3).contains(pi**6 / 945)
        assert t_even(1).contains(pi**2 / 8)
        assert t_even(2).contains(pi**4 / 96)
        assert mpmath.nstr(zeta_even(1).value, 11) == "1.6449340668"
        for k in range(1, 11):
            diff = t_even(k).value - (1 - mpf(2) ** (-2 * k)) * zeta_even(k).value
            assert abs(diff) <= t_even(k).error_bound + zeta_even(k).error_bound
        # independent route through the Riemann zeta function
        for k in range(1, 8):
            assert zeta_even(k).contains(mpmath.zeta(2 * k))
    with pytest.raises(DomainError):
        t_even(0)
    with pytest.raises(DomainError):
        zeta_even(0)


def test_depth_two_closed_forms():
    v = mtv_numeric((2, 2), PREC, 1e-20)
    assert v.error_bound <= 1e-20
    with mpmath.workprec(PREC + 40):
        assert v.contains(mpmath.pi**4 / 384)
        assert mtv_star_numeric((2, 2), PREC, 1e-20).contains(5 * mpmath.pi**4 / 384)
        assert mtv_numeric((4,), PREC).contains(mpmath.pi**4 / 96)


def test_depth_one_star_is_plain():
    a = mtv_numeric((6,), PREC)
    b = mtv_star_numeric((6,), PREC)
    assert a.value == b.value


def test_depth_three_against_appendix_formula():
    # (1/8) t(6) - (1/16) zeta(2) t(4)
    v = mtv_numeric((2, 2, 2), PREC, 1e-12)
    rhs = numeric_rhs(mtv_formula(MultiPoly.constant(3, 1), 3), 3)
    by_hand = t_even(3) * Fraction(1, 8) - zeta_even(1) * t_even(2) * Fraction(1, 16)
    assert abs(rhs.value - by_hand.value) <= rhs.error_bound + by_hand.error_bound
    assert abs(v.value - rhs.value) <= v.error_bound + rhs.error_bound


def test_stuffle_containment_depth_two():
    # t(a)t(b) = t(a,b) + t(b,a) + t(a+b) and the certified intervals agree
    for a, b in ((2, 4), (4, 2), (2, 6), (6, 4)):
        lhs = t_even(a // 2) * t_even(b // 2)
        rhs = mtv_numeric((a, b)) + mtv_numeric((b, a)) + t_even((a + b) // 2)
        assert abs(lhs.value - rhs.value) <= lhs.error_bound + rhs.error_bound


def test_inner_exponent_one_allowed():
    # t(2,1) against a brute partial sum with a crude tail
    v = mtv_numeric((2, 1), 128, 1e-30)
    assert v.error_bound < 1e-30
    assert abs(float(v.value) - 0.329236162849817) < 1e-12


def test_direct_method_agrees():
    for s in ((2, 2), (4, 2, 2), (2, 2, 2)):
        fast = mtv_numeric(s, PREC)
        slow = mtv_direct(s, PREC, outer=4001)
        assert slow.error_bound < 1e-3
        assert abs(fast.value - slow.value) <= fast.error_bound + slow.error_bound


def test_refinement_is_monotone():
    prev = mtv_numeric((2, 2, 2), PREC, 1e-8, cutoff=11, terms=4)
    for cutoff, terms in ((21, 6), (41, 10), (101, 24)):
        cur = mtv_numeric((2, 2, 2), PREC, 1e-8, cutoff=cutoff, terms=terms)
        assert abs(cur.value - prev.value) <= prev.error_bound + cur.error_bound
        prev = cur


def test_domain_errors():
    with pytest.raises(DomainError):
        mtv_numeric((1, 2))
    with pytest.raises(DomainError):
        mtv_numeric((2, 0))
    with pytest.raises(DomainError):
        mtv_numeric(())
    with pytest.raises(DomainError):
        mtv_direct((2, 1))
    with pytest.raises(DomainError):
        verify_formula_numeric(mtv_formula(MultiPoly.constant(2, 1), 2), 1)


def test_contractions():
    assert contractions((2, 4, 6)) == [(2, 4, 6), (2, 10), (6, 6), (12,)]


def test_verify_examples():
    one = MultiPoly.constant(2, 1)
    chk = verify_formula_numeric(mtv_formula(one, 2), 3, PREC, 1e-20)
    assert chk.passed
    chk = verify_formula_numeric(weighted_formula(one, 2), 2, PREC, 1e-30)
    assert chk.passed and abs(chk.residual.value) < 1e-70
    k1, k2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)
    chk = verify_formula_numeric(mtv_star_formula(k1 * k2, 2), 4, 256, 1e-20)
    assert chk.passed
    data = json.loads(json.dumps(chk.to_json()))
    assert set(data) == {"value", "error_bound", "pass"} and data["pass"] is True


def test_wrong_formula_fails():
    one = MultiPoly.constant(2, 1)
    good = mtv_formula(one, 2)
    bad = type(good)("mtv", 2, one, ((0, good.terms[0][1] * 2),))
    assert not verify_formula_numeric(bad, 4, PREC, 1e-18).passed


def test_exact_value_pi_multiple():
    v = exact_value(PiMultiple(Fraction(1, 3), 2))
    with mpmath.workprec(PREC + 40):
        assert v.contains(mpmath.pi**2 / 3)
