import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from teven.formula import (
    Formula,
    PiMultiple,
    bernoulli_sum_formula,
    bound_violations,
    brute_force_lhs,
    evaluate_formula_exact,
    iter_monomials,
    t_even_exact,
    t_product_formula,
    weighted_formula,
    zeta_even_exact,
)
from teven.poly import MultiPoly, UniPoly

K = UniPoly.x()
k1, k2 = MultiPoly.var(2, 1), MultiPoly.var(2, 2)


def coeffs(formula):
    return dict(formula.terms)


def test_bernoulli_examples():
    assert coeffs(bernoulli_sum_formula([0, 0])) == {0: -(2 * K - 1)}
    assert coeffs(bernoulli_sum_formula([1, 0])) == {0: -K * (2 * K - 1) * Fraction(1, 2)}
    assert coeffs(bernoulli_sum_formula([2, 0])) == {
        0: -K * (2 * K - 1) * (4 * K - 1) * Fraction(1, 12),
        1: -(2 * K - 3) * Fraction(1, 24),
    }
    assert coeffs(bernoulli_sum_formula([0, 0, 0])) == {
        0: (K - 1) * (2 * K - 1),
        1: UniPoly([Fraction(1, 4)]),
    }


def test_t_product_examples():
    assert coeffs(t_product_formula([0, 0])) == {0: (2 * K - 1) * Fraction(1, 2)}
    assert coeffs(t_product_formula([2, 0])) == {
        0: K * (2 * K - 1) * (4 * K - 1) * Fraction(1, 24),
        1: -(2 * K - 3) * Fraction(1, 8),
    }
    assert coeffs(t_product_formula([0, 0, 0])) == {
        0: (K - 1) * (2 * K - 1) * Fraction(1, 4),
        1: UniPoly([Fraction(-3, 8)]),
    }


def test_weighted_examples():
    assert coeffs(weighted_formula(k1 * k2, 2)) == {
        0: K * (2 * K - 1) * (2 * K + 1) * Fraction(1, 24),
        1: (2 * K - 3) * Fraction(1, 8),
    }
    assert weighted_formula(MultiPoly.constant(3, 1), 3, "bernoulli") == bernoulli_sum_formula([0, 0, 0])
    assert coeffs(weighted_formula(k1**3 * k2**2, 2)) == {
        0: K**2 * (2 * K - 1) * (2 * K + 1) * (4 * K**2 + 1) * Fraction(1, 960),
        1: K * (2 * K - 3) * (6 * K - 5) * Fraction(1, 64),
        2: K * (2 * K - 5) * Fraction(-3, 64),
    }


def test_exact_evaluation_examples():
    assert evaluate_formula_exact(bernoulli_sum_formula([0, 0]), 2) == Fraction(1, 16)
    assert evaluate_formula_exact(t_product_formula([0, 0]), 2) == PiMultiple(Fraction(1, 64), 4)
    assert brute_force_lhs("bernoulli", MultiPoly.constant(2, 1), 2, 2) == Fraction(1, 16)
    assert brute_force_lhs("t-product", MultiPoly.constant(2, 1), 2, 3) == PiMultiple(Fraction(1, 384), 6)
    with pytest.raises(ValueError):
        evaluate_formula_exact(t_product_formula([0, 0]), 1)
    with pytest.raises(ValueError):
        brute_force_lhs("bernoulli", MultiPoly.constant(2, 1), 2, 1)


def test_euler_values():
    assert t_even_exact(1) == PiMultiple(Fraction(1, 8), 2)
    assert t_even_exact(2) == PiMultiple(Fraction(1, 96), 4)
    assert zeta_even_exact(1) == PiMultiple(Fraction(1, 6), 2)
    assert zeta_even_exact(2) == PiMultiple(Fraction(1, 90), 4)
    assert zeta_even_exact(0) == PiMultiple(Fraction(-1, 2), 0)
    for k in range(1, 15):
        assert t_even_exact(k).coeff == (1 - Fraction(1, 4**k)) * zeta_even_exact(k).coeff


def test_brute_force_sweep_small():
    for n in (1, 2, 3):
        for m in iter_monomials(n, 3):
            f = MultiPoly.monomial(m)
            for family in ("bernoulli", "t-product"):
                formula = weighted_formula(f, n, family)
                for k in range(n, n + 5):
                    assert brute_force_lhs(family, f, n, k) == evaluate_formula_exact(formula, k)


def test_bounds_hold():
    for n in (1, 2, 3, 4):
        for m in iter_monomials(n, 4):
            assert bound_violations(t_product_formula(m)) == []
            assert bound_violations(bernoulli_sum_formula(m)) == []


def test_json_round_trip_is_stable():
    f = weighted_formula(k1**2 * k2 + k1 * Fraction(1, 3), 2)
    data = f.to_json()
    again = Formula.from_json(json.loads(json.dumps(data)))
    assert again == f
    assert json.dumps(again.to_json(), sort_keys=True) == json.dumps(data, sort_keys=True)
    assert data["conventions"] == {"t0": "0", "zeta0": "-1/2"}


def test_raw_terms_restore_zeta0():
    f = t_product_formula([0, 0])
    assert dict(f.raw_terms())[0] == -(2 * K - 1)


def test_rendering():
    f = t_product_formula([0, 0])
    assert "t(2k)" in f.to_text()
    tex = f.to_latex()
    assert tex.startswith(r"\sum\nolimits^{(2)}")
    assert r"\frac{1}{2}" in tex


def test_family_validation():
    with pytest.raises(ValueError):
        weighted_formula(k1, 2, "mtv")
    with pytest.raises(ValueError):
        weighted_formula(k1, 3)
    with pytest.raises(ValueError):
        Formula("nope", 2, k1, ())


mono2 = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)),
    st.fractions(min_value=-3, max_value=3, max_denominator=5),
    max_size=4,
).map(lambda d: MultiPoly(2, d))


@settings(max_examples=30, deadline=None)
@given(mono2, mono2, st.fractions(min_value=-2, max_value=2, max_denominator=3))
def test_linearity(f, g, a):
    lhs = weighted_formula(f * a + g, 2)
    rhs_f, rhs_g = coeffs(weighted_formula(f, 2)), coeffs(weighted_formula(g, 2))
    expected = {}
    for l in set(rhs_f) | set(rhs_g):
        c = rhs_f.get(l, UniPoly()) * a + rhs_g.get(l, UniPoly())
        if c:
            expected[l] = c
    assert coeffs(lhs) == expected
