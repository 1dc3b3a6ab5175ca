from fractions import Fraction

import pytest

from teven.fg import (
    CapacityError,
    FGTable,
    a_matrix,
    a_matrix_inverse,
    c_lead,
    d_lead,
    f_poly,
    g_poly,
    identity,
    matmul,
)
from teven.poly import TruncatedSeries, UniPoly, series_F, series_H

X = UniPoly.x()


def test_f_examples():
    assert f_poly(0, 0) == X * Fraction(1, 2)
    assert f_poly(0, 1) == UniPoly([-1])
    assert f_poly(1, 1) == X - 1
    assert f_poly(2, 1) == -(X**2) + 3 * X - 1
    assert f_poly(2, 3) == UniPoly([-2])


def test_g_examples():
    assert g_poly(0, 1) == UniPoly([-1])
    assert g_poly(1, 1) == 1 - X
    assert g_poly(2, 2) == (1 - X) * Fraction(3, 2)


def test_leading_coefficients():
    for m in range(7):
        assert c_lead(m, 1) == (-1) ** (m + 1)
    assert d_lead(3, 1) == -1
    assert c_lead(2, 2) == 3


def test_argument_errors():
    for bad in ((0, 2), (2, -1), (-1, 0)):
        with pytest.raises(ValueError):
            f_poly(*bad)
    for bad in ((0, 0), (1, 3)):
        with pytest.raises(ValueError):
            g_poly(*bad)
    with pytest.raises(ValueError):
        c_lead(1, 3)
    with pytest.raises(CapacityError):
        FGTable(max_m=4).f(5, 1)


def test_small_matrices():
    assert a_matrix(0) == [[UniPoly([-1])]]
    assert a_matrix(1) == [[UniPoly([-1]), UniPoly()], [X - 1, UniPoly([-1])]]
    assert matmul(a_matrix(3), a_matrix_inverse(3)) == identity(3)


def test_row_sums_and_degrees():
    for m in range(16):
        row = sum((f_poly(m, i) * X ** (i - 1) for i in range(1, m + 2)), UniPoly())
        assert row == UniPoly([-1])
        assert sum(c_lead(m, i) for i in range(1, m + 2)) == (-1 if m == 0 else 0)
        for i in range(1, m + 2):
            assert f_poly(m, i).degree == m + 1 - i
            assert (-1) ** (m + i) * c_lead(m, i) > 0
            assert f_poly(m, i).has_integer_coeffs()
            assert g_poly(m, i).degree <= m + 1 - i
        assert d_lead(m, 1) == -1


def test_inverse_up_to_10():
    for m in range(11):
        assert matmul(a_matrix(m), a_matrix_inverse(m)) == identity(m)


def _poly_series(p: UniPoly, order: int) -> TruncatedSeries:
    return TruncatedSeries(p.coeffs, order)


def test_derivative_expansion_in_h():
    order = 20
    h = series_H(order)
    d = series_F(order)
    for m in range(7):
        rhs = TruncatedSeries([], order)
        for i in range(m + 2):
            rhs = rhs + h**i * f_poly(m, i)
        assert rhs == d
        d = d.apply_d()


def test_h_powers_in_derivative_basis():
    order = 20
    h = series_H(order)
    ders = [series_F(order)]
    for _ in range(8):
        ders.append(ders[-1].apply_d())
    for i in range(1, 8):
        rhs = _poly_series(X**i * Fraction(1, 2), order)
        for j in range(1, i + 1):
            rhs = rhs + ders[j - 1] * g_poly(i - 1, j)
        assert rhs == h**i
