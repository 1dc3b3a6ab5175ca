"""Exact scalars: rationals, factorials, binomials and Bernoulli numbers.

Rationals are :class:`fractions.Fraction` throughout.  Bernoulli numbers use
the convention ``B_1 = -1/2`` coming from the generating function
``x / (e^x - 1)``.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

__all__ = [
    "Fraction",
    "bernoulli",
    "beta",
    "binomial",
    "factorial",
    "format_rational",
    "parse_rational",
]


def factorial(i: int) -> int:
    if i < 0:
        raise ValueError("factorial of a negative integer")
    return math.factorial(i)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        raise ValueError(f"binomial({n}, {k}) requires 0 <= k <= n")
    return math.comb(n, k)


class BernoulliTable:
    """Append-only memo of B_0, B_1, ... filled by the defining recurrence

        sum_{j=0}^{m} C(m+1, j) B_j = 0   (m >= 1).

    Reads of filled entries need no lock; extension is serialized.
    """

    def __init__(self) -> None:
        self._cache: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._cache)

    def __getitem__(self, i: int) -> Fraction:
        if i < 0:
            raise ValueError("Bernoulli index must be nonnegative")
        cache = self._cache
        if i < len(cache):
            return cache[i]
        with self._lock:
            self._extend(i)
        return self._cache[i]

    def _extend(self, i: int) -> None:
        cache = self._cache
        for m in range(len(cache), i + 1):
            if m % 2 == 1:
                cache.append(Fraction(0))
                continue
            # C(m+1, m) B_m = -sum_{j<m} C(m+1, j) B_j
            s = sum(
                (math.comb(m + 1, j) * cache[j] for j in range(m) if cache[j]),
                Fraction(0),
            )
            cache.append(-s / (m + 1))


_BERNOULLI = BernoulliTable()


def bernoulli(i: int) -> Fraction:
    """Return B_i with B_1 = -1/2."""
    return _BERNOULLI[i]


def beta(i: int) -> Fraction:
    """Return (2^i - 1) * B_i."""
    return ((1 << i) - 1) * bernoulli(i)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational` ("p/q" or "p")."""
    num, sep, den = text.strip().partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational literal: {text!r}") from exc
