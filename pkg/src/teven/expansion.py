"""Expand D^{m_1}F ... D^{m_n}F in the basis 1, F, DF, D^2F, ...

    prod_j D^{m_j}F = R_0(x) + sum_{j=1}^{|m|} R_j(x) D^{j-1}F

where |m| = m_1 + ... + m_n + n.  Every R_j is even and a_{jl} is the
coefficient of x^{2l} in R_j.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .fg import f_poly, g_poly
from .poly import UniPoly


@dataclass(frozen=True)
class ExpansionResult:
    m_vec: tuple[int, ...]
    weight_norm: int
    r_polys: tuple[UniPoly, ...]
    a_table: dict[tuple[int, int], Fraction]
    t_bound: int

    @property
    def n(self) -> int:
        return len(self.m_vec)

    def a(self, j: int, l: int) -> Fraction:
        return self.a_table.get((j, l), Fraction(0))


def _validate(m_vec: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(v) for v in m_vec)
    if not m:
        raise ValueError("exponent vector must be nonempty")
    if any(v < 0 for v in m):
        raise ValueError("exponents must be nonnegative")
    return m


def weight_norm(m_vec: Sequence[int]) -> int:
    return sum(m_vec) + len(m_vec)


def t_bound(m_vec: Sequence[int]) -> int:
    n = len(m_vec)
    if all(v == 0 for v in m_vec):
        return (n - 1) // 2
    return (weight_norm(m_vec) - 2) // 2


def big_f(i: int, m_vec: Sequence[int]) -> UniPoly:
    """F_i(x): sum over i_1+..+i_n = i, 0 <= i_j <= m_j+1, of prod F_{m_j i_j}."""
    m = _validate(m_vec)
    total = weight_norm(m)
    if not 0 <= i <= total:
        raise ValueError(f"F_i index {i} outside 0..{total}")
    acc = UniPoly()
    for idx in itertools.product(*(range(mj + 2) for mj in m)):
        if sum(idx) != i:
            continue
        term = UniPoly([1])
        for mj, ij in zip(m, idx):
            term = term * f_poly(mj, ij)
        acc = acc + term
    return acc


def _all_big_f(m: tuple[int, ...]) -> list[UniPoly]:
    total = weight_norm(m)
    out = [UniPoly() for _ in range(total + 1)]
    # one pass over the mixed-radix box instead of one pass per i
    for idx in itertools.product(*(range(mj + 2) for mj in m)):
        term = UniPoly([1])
        for mj, ij in zip(m, idx):
            term = term * f_poly(mj, ij)
        out[sum(idx)] = out[sum(idx)] + term
    return out


_CACHE: dict[tuple[int, ...], ExpansionResult] = {}
_LOCK = threading.Lock()


def expand(m_vec: Sequence[int]) -> ExpansionResult:
    m = _validate(m_vec)
    hit = _CACHE.get(m)
    if hit is not None:
        return hit
    with _LOCK:
        hit = _CACHE.get(m)
        if hit is None:
            hit = _CACHE[m] = _expand(m)
    return hit


def _expand(m: tuple[int, ...]) -> ExpansionResult:
    total = weight_norm(m)
    fs = _all_big_f(m)
    r0 = fs[0]
    for i in range(1, total + 1):
        r0 = r0 + fs[i] * UniPoly.monomial(Fraction(1, 2), i)
    rs = [r0]
    for j in range(1, total + 1):
        acc = UniPoly()
        for i in range(j, total + 1):
            acc = acc + fs[i] * g_poly(i - 1, j)
        rs.append(acc)

    a_table: dict[tuple[int, int], Fraction] = {}
    for j in range(1, total + 1):
        r = rs[j]
        if not r.is_even():
            raise AssertionError(f"R_{j} for {m} is not even: {r.to_text()}")
        top = (total - j) // 2
        if r.degree > total - j:
            raise AssertionError(f"deg R_{j} = {r.degree} exceeds {total - j} for {m}")
        for l in range(top + 1):
            a_table[j, l] = r[2 * l]
    if not rs[0].is_even():
        raise AssertionError(f"R_0 for {m} is not even")
    return ExpansionResult(m, total, tuple(rs), a_table, t_bound(m))


def r1_degree_check(m_vec: Sequence[int]) -> bool | None:
    """deg R_1 <= |m| - 2 when n is even or some m_i > 0.

    Returns None when the hypothesis does not hold (nothing to check).
    """
    m = _validate(m_vec)
    if len(m) % 2 == 1 and all(v == 0 for v in m):
        return None
    res = expand(m)
    return res.r_polys[1].degree <= res.weight_norm - 2
