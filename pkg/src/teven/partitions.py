"""Weighted sums of multiple t-values and t-star values.

The symmetrized sum of t(2k_{s(1)},..,2k_{s(n)}) over all permutations s is
a signed sum over set partitions of {1..n} of products of single t-values
(Hoffman's symmetric sum formulas).  Summing a symmetric weight over all
compositions then reduces every partition to a weighted t-product sum in
fewer variables, which :mod:`teven.formula` evaluates.
"""

from __future__ import annotations

import functools
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .fg import CapacityError
from .formula import Formula, combine, weighted_formula
from .poly import MultiPoly, UniPoly, compositions, interpolate

DEFAULT_PARTITION_CAP = 10


@dataclass(frozen=True)
class SetPartition:
    """Blocks of 1-based positions, each sorted, blocks ordered by minimum."""

    blocks: tuple[tuple[int, ...], ...]

    @property
    def block_count(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sorted((len(b) for b in self.blocks), reverse=True))

    @property
    def c(self) -> int:
        """prod (|P_j| - 1)!"""
        return math.prod(math.factorial(len(b) - 1) for b in self.blocks)

    @property
    def c_signed(self) -> int:
        return (-1) ** (self.n - self.block_count) * self.c


def _restricted_growth(n: int) -> Iterator[list[int]]:
    a = [0] * n
    yield list(a)
    while True:
        # rightmost position that can still be incremented
        i = n - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        for j in range(i + 1, n):
            a[j] = 0
        yield list(a)


def enumerate_partitions(n: int, cap: int = DEFAULT_PARTITION_CAP) -> list[SetPartition]:
    """All Bell(n) set partitions of {1..n}, via restricted growth strings."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > cap:
        raise CapacityError(f"n = {n} exceeds the partition cap {cap}")
    out = []
    for rgs in _restricted_growth(n):
        blocks: dict[int, list[int]] = {}
        for pos, b in enumerate(rgs, start=1):
            blocks.setdefault(b, []).append(pos)
        out.append(SetPartition(tuple(tuple(blocks[b]) for b in sorted(blocks))))
    return out


def shape_multiplicity(shape: Sequence[int]) -> int:
    """Number of set partitions of {1..sum(shape)} with the given block sizes."""
    ls = list(shape)
    if not ls or any(v < 1 for v in ls) or ls != sorted(ls, reverse=True):
        raise ValueError(f"invalid block-size shape {shape!r}")
    n = sum(ls)
    denom = math.prod(math.factorial(v) for v in ls)
    denom *= math.prod(math.factorial(m) for m in Counter(ls).values())
    return math.factorial(n) // denom


def power_sum_brute(p_vec: Sequence[int], s: int) -> int:
    """sum over k_1+..+k_l = s, k_j >= 1, of k_1^{p_1} .. k_l^{p_l}."""
    return sum(math.prod(k**p for k, p in zip(comp, p_vec)) for comp in compositions(s, len(p_vec)))


@functools.lru_cache(maxsize=None)
def _power_sum_poly(p_vec: tuple[int, ...]) -> UniPoly:
    l = len(p_vec)
    deg = sum(p_vec) + l - 1
    samples = [(s, power_sum_brute(p_vec, s)) for s in range(l, l + deg + 1)]
    g = interpolate(samples)
    probe = l + deg + 1
    if g(probe) != power_sum_brute(p_vec, probe):
        raise AssertionError(f"power-sum polynomial for {p_vec} failed the extra sample")
    if g.degree != deg:
        raise AssertionError(f"power-sum polynomial for {p_vec} has degree {g.degree}, not {deg}")
    return g


def power_sum_poly(p_vec: Sequence[int]) -> UniPoly:
    """The polynomial g with g(s) = sum_{k_1+..+k_l=s} prod k_j^{p_j} for s >= 1."""
    p = tuple(int(v) for v in p_vec)
    if not p or any(v < 0 for v in p):
        raise ValueError("power vector must be nonempty and nonnegative")
    return _power_sum_poly(p)


def find_asymmetry(f: MultiPoly) -> tuple[int, int] | None:
    """First adjacent transposition (i, i+1) (1-based) not fixing f."""
    n = f.arity
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
        if f.permute(perm) != f:
            return (i + 1, i + 2)
    return None


def symmetry_check(f: MultiPoly) -> bool:
    return find_asymmetry(f) is None


def symmetrize(f: MultiPoly) -> MultiPoly:
    """Average of f over all n! permutations of its variables."""
    n = f.arity
    acc = MultiPoly(n)
    perms = list(itertools.permutations(range(n)))
    for perm in perms:
        acc = acc + f.permute(perm)
    return acc * Fraction(1, len(perms))


class SymmetryError(ValueError):
    def __init__(self, transposition: tuple[int, int]) -> None:
        self.transposition = transposition
        i, j = transposition
        super().__init__(f"weight is not symmetric: swapping k{i} and k{j} changes it")


def _uni_to_multi(g: UniPoly, arity: int, var: int) -> MultiPoly:
    terms = {}
    for e, c in enumerate(g.coeffs):
        if c:
            exps = [0] * arity
            exps[var] = e
            terms[tuple(exps)] = c
    return MultiPoly(arity, terms)


def block_weight(f: MultiPoly, partition: SetPartition) -> MultiPoly:
    """g_Pi(s_1..s_i): sum of f over compositions with block sums s_j."""
    i = partition.block_count
    acc = MultiPoly(i)
    for exps, c in f.terms.items():
        term = MultiPoly.constant(i, c)
        for j, block in enumerate(partition.blocks):
            g = power_sum_poly([exps[pos - 1] for pos in block])
            term = term * _uni_to_multi(g, i, j)
        acc = acc + term
    return acc


def _symmetric_formula(
    f: MultiPoly, n: int, family: str, signed: bool, cap: int
) -> Formula:
    if f.arity != n:
        raise ValueError(f"weight has arity {f.arity} but depth is {n}")
    bad = find_asymmetry(f)
    if bad is not None:
        raise SymmetryError(bad)
    nf = math.factorial(n)
    parts = []
    for part in enumerate_partitions(n, cap):
        coeff = part.c_signed if signed else part.c
        g = block_weight(f, part)
        if g.is_zero():
            continue
        parts.append((Fraction(coeff, nf), weighted_formula(g, part.block_count, "t-product")))
    return combine(family, n, f, parts)


def mtv_formula(f: MultiPoly, n: int, cap: int = DEFAULT_PARTITION_CAP) -> Formula:
    """sum_{I(k,n)} f(k) t(2k_1,..,2k_n) for symmetric f."""
    return _symmetric_formula(f, n, "mtv", True, cap)


def mtv_star_formula(f: MultiPoly, n: int, cap: int = DEFAULT_PARTITION_CAP) -> Formula:
    """sum_{I(k,n)} f(k) t*(2k_1,..,2k_n) for symmetric f."""
    return _symmetric_formula(f, n, "mtv-star", False, cap)


def monomial_symmetric(shape: Sequence[int], n: int) -> MultiPoly:
    """m_lambda(x_1..x_n): sum of distinct permutations of x^lambda."""
    lam = list(shape) + [0] * (n - len(shape))
    if len(lam) != n:
        raise ValueError(f"shape {shape!r} has more than {n} parts")
    return MultiPoly(n, {p: 1 for p in set(itertools.permutations(lam))})


def integer_partitions(total: int, max_parts: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` into at most ``max_parts`` parts, descending."""

    def rec(rem: int, largest: int, parts: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        if parts == 0:
            return
        for first in range(min(rem, largest), 0, -1):
            for rest in rec(rem - first, first, parts - 1):
                yield (first,) + rest

    yield from rec(total, total, max_parts)
