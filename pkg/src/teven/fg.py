"""The polynomial families F_{mi}(x) and G_{mi}(x).

With D = x d/dx, F(x) = x/2 - x/(e^x+1) and H(x) = x/(e^x+1)::

    D^m F = sum_{i=0}^{m+1} F_{mi}(x) H^i
    H^i   = sum_{j=1}^{i} G_{i-1,j}(x) D^{j-1} F + x^i / 2

The rows F_{m1..m,m+1} form the lower triangular matrix A_m(x); the G rows
form its inverse.
"""

from __future__ import annotations

import functools
import threading
from fractions import Fraction

from .arith import factorial
from .poly import UniPoly

DEFAULT_MAX_M = 64

Matrix = list[list[UniPoly]]


class CapacityError(ValueError):
    """Requested size is beyond the configured cap."""


class FGTable:
    """Memo tables for F_{mi} and G_{mi}.

    Filling an entry forces all entries it depends on.  Population goes
    through one lock; reads of existing entries do not.
    """

    def __init__(self, max_m: int = DEFAULT_MAX_M) -> None:
        self.max_m = max_m
        self._f: dict[tuple[int, int], UniPoly] = {}
        self._g: dict[tuple[int, int], UniPoly] = {}
        self._rows = 0  # rows 0.._rows-1 are complete in both tables
        self._lock = threading.Lock()

    def _ensure(self, m: int) -> None:
        if m < self._rows:
            return
        if m > self.max_m:
            raise CapacityError(f"m = {m} exceeds the configured maximum {self.max_m}")
        with self._lock:
            for row in range(self._rows, m + 1):
                self._fill_row(row)
                self._rows = row + 1

    def _fill_row(self, m: int) -> None:
        f, g = self._f, self._g
        x = UniPoly.x()
        if m == 0:
            f[0, 0] = UniPoly([0, Fraction(1, 2)])
            f[0, 1] = UniPoly([-1])
        else:
            f[m, 0] = x * f[m - 1, 0].derivative()
            f[m, m + 1] = f[m - 1, m] * m
            one_minus_x = UniPoly([1, -1])
            for i in range(1, m + 1):
                p = x * f[m - 1, i].derivative() + one_minus_x * f[m - 1, i] * i
                if i >= 2:
                    p = p + f[m - 1, i - 1] * (i - 1)
                f[m, i] = p
        mf = Fraction(1, factorial(m))
        g[m, m + 1] = UniPoly([-mf])
        for i in range(1, m + 1):
            acc = UniPoly()
            for j in range(i, m + 1):
                acc = acc + f[m, j] * g[j - 1, i]
            g[m, i] = acc * mf

    def f(self, m: int, i: int) -> UniPoly:
        if m < 0 or not 0 <= i <= m + 1:
            raise ValueError(f"F_{{{m},{i}}} needs m >= 0 and 0 <= i <= m+1")
        self._ensure(m)
        return self._f[m, i]

    def g(self, m: int, i: int) -> UniPoly:
        if m < 0 or not 1 <= i <= m + 1:
            raise ValueError(f"G_{{{m},{i}}} needs m >= 0 and 1 <= i <= m+1")
        self._ensure(m)
        return self._g[m, i]


_TABLE = FGTable()


def default_table() -> FGTable:
    return _TABLE


def f_poly(m: int, i: int) -> UniPoly:
    return _TABLE.f(m, i)


def g_poly(m: int, i: int) -> UniPoly:
    return _TABLE.g(m, i)


@functools.lru_cache(maxsize=None)
def c_lead(m: int, i: int) -> Fraction:
    """Coefficient c_{mi} of x^{m+1-i} in F_{mi} (c_{m0} = 1/2).

    Cross-checked against c_{mi} = -i c_{m-1,i} + (i-1) c_{m-1,i-1}.
    """
    if m < 0 or not 0 <= i <= m + 1:
        raise ValueError(f"c_{{{m},{i}}} needs m >= 0 and 0 <= i <= m+1")
    if i == 0:
        return Fraction(1, 2)
    value = f_poly(m, i)[m + 1 - i]
    if m == 0:
        expected = Fraction(-1)
    elif i == m + 1:
        expected = Fraction(-factorial(m))
    else:
        expected = -i * c_lead(m - 1, i) + (i - 1) * c_lead(m - 1, i - 1)
    if value != expected:
        raise AssertionError(f"c_{{{m},{i}}} recurrence mismatch: {value} != {expected}")
    return value


@functools.lru_cache(maxsize=None)
def d_lead(m: int, i: int) -> Fraction:
    """Coefficient d_{mi} of x^{m+1-i} in G_{mi}.

    Cross-checked against d_{mi} = (1/m!) sum_{j=i}^{m} c_{mj} d_{j-1,i}.
    """
    if m < 0 or not 1 <= i <= m + 1:
        raise ValueError(f"d_{{{m},{i}}} needs m >= 0 and 1 <= i <= m+1")
    value = g_poly(m, i)[m + 1 - i]
    if i == m + 1:
        expected = Fraction(-1, factorial(m))
    else:
        expected = sum(
            (c_lead(m, j) * d_lead(j - 1, i) for j in range(i, m + 1)), Fraction(0)
        ) / factorial(m)
    if value != expected:
        raise AssertionError(f"d_{{{m},{i}}} recurrence mismatch: {value} != {expected}")
    return value


def a_matrix(m: int) -> Matrix:
    """(m+1)x(m+1) lower triangular matrix with entries F_{r,c+1}."""
    return [[f_poly(r, c + 1) if c <= r else UniPoly() for c in range(m + 1)] for r in range(m + 1)]


def a_matrix_inverse(m: int) -> Matrix:
    return [[g_poly(r, c + 1) if c <= r else UniPoly() for c in range(m + 1)] for r in range(m + 1)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    n, inner, p = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(p):
            acc = UniPoly()
            for k in range(inner):
                if a[i][k] and b[k][j]:
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def identity(m: int) -> Matrix:
    return [[UniPoly([1]) if r == c else UniPoly() for c in range(m + 1)] for r in range(m + 1)]
