"""Certified multiprecision values of zeta(2l), t(2k), multiple t-values and
multiple t-star values, plus numeric checks of derived formulas.

Multiple t-values use a split at an odd cutoff N.  Writing
Lam(s_1..s_d; x) for the sum over odd m_1 > .. > m_d >= x and P for the
exact finite sum over odd values below N,

    t(s_1..s_n) = sum_{d=0}^{n} Lam(s_1..s_d; N) * P(s_{d+1}..s_n; < N).

Lam satisfies the shift rule

    Lam(s_1..s_p; x+2) = sum_j (-1)^j x^{-(s_p+..+s_{p-j+1})} Lam(s_1..s_{p-j}; x)

and the outermost sums sum_{odd m >= x} m^{-a} are Hurwitz zeta values.
Inner levels are carried as power expansions in 1/x whose remainder is a
nonnegative combination of powers, obtained from the step-2
Euler-Maclaurin formula.  For x^{-a} the remainder after r correction
terms is at most the magnitude of the r-th term, so everything is
certified for odd x >= N.

A cruder evaluator, truncating the outer sum and bounding the tail by an
integral, is kept as :func:`mtv_direct` for cross-checking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import mpmath
from mpmath import mpf

from .arith import bernoulli, beta, factorial
from .formula import Formula, PiMultiple, t_even_exact, zeta_even_exact
from .poly import MultiPoly, compositions

DEFAULT_PREC = 256
GUARD_BITS = 32
DEFAULT_CUTOFF = 101
DEFAULT_TERMS = 24


class DomainError(ValueError):
    """Index or argument outside the domain of the numeric evaluators."""


def default_eps(depth: int) -> float:
    return 1e-20 if depth <= 2 else 1e-12


@dataclass(frozen=True)
class CertifiedValue:
    """The true value lies in [value - error_bound, value + error_bound]."""

    value: mpf
    error_bound: mpf
    prec: int

    def __add__(self, other: "CertifiedValue") -> "CertifiedValue":
        return _combine(self, other, 1)

    def __sub__(self, other: "CertifiedValue") -> "CertifiedValue":
        return _combine(self, other, -1)

    def __mul__(self, other: "CertifiedValue | Fraction | int") -> "CertifiedValue":
        prec = self.prec if not isinstance(other, CertifiedValue) else min(self.prec, other.prec)
        with mpmath.workprec(prec + GUARD_BITS):
            if isinstance(other, CertifiedValue):
                v = self.value * other.value
                err = (
                    abs(self.value) * other.error_bound
                    + abs(other.value) * self.error_bound
                    + self.error_bound * other.error_bound
                )
            else:
                q = _to_mpf(Fraction(other))
                v = self.value * q
                err = abs(q) * self.error_bound
            err += abs(v) * _ulp_factor(prec)
        return CertifiedValue(v, err, prec)

    __rmul__ = __mul__

    def __neg__(self) -> "CertifiedValue":
        return CertifiedValue(-self.value, self.error_bound, self.prec)

    def contains(self, x: mpf) -> bool:
        return abs(self.value - x) <= self.error_bound

    def to_json(self) -> dict:
        return {"value": _fmt(self.value), "error_bound": _fmt(self.error_bound)}


def _combine(a: CertifiedValue, b: CertifiedValue, sign: int) -> CertifiedValue:
    prec = min(a.prec, b.prec)
    with mpmath.workprec(prec + GUARD_BITS):
        v = a.value + sign * b.value
        err = a.error_bound + b.error_bound + abs(v) * _ulp_factor(prec)
    return CertifiedValue(v, err, prec)


def _ulp_factor(prec: int) -> mpf:
    return mpf(2) ** (-prec)


def _fmt(x: mpf) -> str:
    return mpmath.nstr(x, 25, min_fixed=-5, max_fixed=5)


def _to_mpf(q: Fraction) -> mpf:
    return mpf(q.numerator) / q.denominator


def exact_value(x: Fraction | PiMultiple, prec: int = DEFAULT_PREC) -> CertifiedValue:
    """Numeric enclosure of an exact rational or rational multiple of pi^p."""
    with mpmath.workprec(prec + GUARD_BITS):
        if isinstance(x, PiMultiple):
            v = _to_mpf(x.coeff) * mpmath.pi**x.power
            slack = x.power + 4
        else:
            v = _to_mpf(Fraction(x))
            slack = 2
        err = abs(v) * slack * mpf(2) ** (-(prec + GUARD_BITS)) + abs(v) * _ulp_factor(prec)
    return CertifiedValue(v, err, prec)


def zeta_even(l: int, prec: int = DEFAULT_PREC) -> CertifiedValue:
    if l < 1:
        raise DomainError("zeta_even needs l >= 1")
    return exact_value(zeta_even_exact(l), prec)


def t_even(k: int, prec: int = DEFAULT_PREC) -> CertifiedValue:
    if k < 1:
        raise DomainError("t_even needs k >= 1")
    return exact_value(t_even_exact(k), prec)


# --- power expansions in 1/x -----------------------------------------------


class _Expansion:
    """sum_e coef[e] x^{-e}, off by at most sum_e err[e] x^{-e} for odd x >= N.

    ``mag`` shadows ``coef`` with sums of absolute contributions, which
    bounds the accumulated rounding.
    """

    def __init__(self) -> None:
        self.coef: dict[int, mpf] = {}
        self.mag: dict[int, mpf] = {}
        self.err: dict[int, mpf] = {}

    @classmethod
    def one(cls) -> "_Expansion":
        e = cls()
        e.coef[0] = mpf(1)
        e.mag[0] = mpf(1)
        return e

    def add_term(self, e: int, c: mpf, m: mpf) -> None:
        self.coef[e] = self.coef.get(e, mpf(0)) + c
        self.mag[e] = self.mag.get(e, mpf(0)) + m

    def add_err(self, e: int, c: mpf) -> None:
        if c:
            self.err[e] = self.err.get(e, mpf(0)) + c

    def truncate(self, cap: int, cutoff: int) -> None:
        """Drop exponents above ``cap`` into the error, valid for x >= cutoff."""
        for e in [e for e in self.coef if e > cap]:
            self.add_err(e, abs(self.coef.pop(e)))
            self.mag.pop(e)
        for e in [e for e in self.err if e > cap]:
            self.add_err(cap, self.err.pop(e) * mpf(cutoff) ** (cap - e))


def _em_coefficients(a: int, terms: int) -> list[tuple[int, Fraction]]:
    """Exact step-2 Euler-Maclaurin terms for sum_{odd m >= x} m^{-a}.

    Returns (exponent, coefficient) pairs; the last pair also bounds the
    remainder.
    """
    out = [(a - 1, Fraction(1, 2 * (a - 1))), (a, Fraction(1, 2))]
    rising = 1  # (a)_{2r-1}
    for r in range(1, terms + 1):
        if r == 1:
            rising = a
        else:
            rising *= (a + 2 * r - 3) * (a + 2 * r - 2)
        c = bernoulli(2 * r) / factorial(2 * r) * 2 ** (2 * r - 1) * rising
        out.append((a + 2 * r - 1, c))
    return out


def _z_exact(a: int, x: int) -> mpf:
    """sum over odd m >= x of m^{-a}."""
    return mpmath.zeta(a, mpf(x) / 2) / mpf(2) ** a


def _z_err_bound(a: int, x: int) -> mpf:
    """Upper bound for sum over odd m >= x of m^{-a} (a > 1)."""
    return mpf(x) ** (-a) + mpf(x) ** (1 - a) / (2 * (a - 1))


def _inner_terms(s: Sequence[int], p: int, lams: list[_Expansion]):
    """Terms of m^{-s_p} Lam(s_1..s_{p-1}; m+2), via the shift rule.

    Yields (exponent, coef, mag, is_error) in powers of 1/m.
    """
    shift = 0
    for j in range(p):
        sign = -1 if j % 2 else 1
        base = s[p - 1] + shift
        lam = lams[p - 1 - j]
        for e, c in lam.coef.items():
            yield base + e, sign * c, lam.mag[e], False
        for e, c in lam.err.items():
            yield base + e, c, c, True
        if j < p - 1:
            shift += s[p - 2 - j]


def _lam_value(s: Sequence[int], p: int, lams: list[_Expansion], cutoff: int) -> tuple[mpf, mpf, mpf]:
    """Lam(s_1..s_p; cutoff) as (value, truncation error, magnitude)."""
    val, err, mag = mpf(0), mpf(0), mpf(0)
    for a, c, m, is_err in _inner_terms(s, p, lams):
        if a <= 1:
            raise AssertionError("divergent exponent in tail expansion")
        if is_err:
            err += c * _z_err_bound(a, cutoff)
        else:
            z = _z_exact(a, cutoff)
            val += c * z
            mag += m * z
    return val, err, mag


def _lam_expansion(s: Sequence[int], p: int, lams: list[_Expansion], cutoff: int, terms: int) -> _Expansion:
    out = _Expansion()
    leading = sum(s[:p]) - p
    for a, c, m, is_err in _inner_terms(s, p, lams):
        if a <= 1:
            raise AssertionError("divergent exponent in tail expansion")
        if is_err:
            out.add_err(a - 1, c / (2 * (a - 1)))
            out.add_err(a, c)
            continue
        em = _em_coefficients(a, terms)
        for e, q in em:
            qv = _to_mpf(q)
            out.add_term(e, c * qv, m * abs(qv))
        e_last, q_last = em[-1]
        out.add_err(e_last, m * abs(_to_mpf(q_last)))
    out.truncate(leading + 2 * terms + 2, cutoff)
    return out


def _partial_sums(s: Sequence[int], cutoff: int) -> list[mpf]:
    """P(s_{d+1}..s_n; < cutoff) for d = 0..n (P of the empty tuple is 1)."""
    n = len(s)
    odd = list(range(1, cutoff, 2))
    # level[i][idx] = sum over chains for s_i..s_n with all members < odd[idx]
    below = [mpf(1)] * (len(odd) + 1)
    out = [mpf(0)] * (n + 1)
    out[n] = mpf(1)
    for i in range(n - 1, -1, -1):
        acc = mpf(0)
        new = [mpf(0)] * (len(odd) + 1)
        for idx, m in enumerate(odd):
            new[idx] = acc
            acc += mpf(m) ** (-s[i]) * below[idx]
        new[len(odd)] = acc
        below = new
        out[i] = acc
    return out


def _check_index(s: Sequence[int]) -> tuple[int, ...]:
    idx = tuple(int(v) for v in s)
    if not idx:
        raise DomainError("index must be nonempty")
    if any(v < 1 for v in idx):
        raise DomainError(f"index {idx} has an entry below 1")
    if idx[0] < 2:
        raise DomainError(f"index {idx} is not admissible: first entry must be >= 2")
    return idx


def _mtv_tail(s: tuple[int, ...], prec: int, cutoff: int, terms: int) -> CertifiedValue:
    n = len(s)
    with mpmath.workprec(prec + GUARD_BITS):
        lams = [_Expansion.one()]
        for p in range(1, n):
            lams.append(_lam_expansion(s, p, lams, cutoff, terms))
        parts = _partial_sums(s, cutoff)
        value, err, mag = parts[0], mpf(0), abs(parts[0])
        for d in range(1, n + 1):
            lv, le, lm = _lam_value(s, d, lams, cutoff)
            value += lv * parts[d]
            err += le * parts[d]
            mag += lm * parts[d]
        err += mag * _ulp_factor(prec)
    return CertifiedValue(value, err, prec)


def mtv_numeric(
    s: Sequence[int],
    prec: int = DEFAULT_PREC,
    eps: float | None = None,
    cutoff: int = DEFAULT_CUTOFF,
    terms: int = DEFAULT_TERMS,
) -> CertifiedValue:
    """t(s_1, .., s_n) with s_1 >= 2 (sum over odd m_1 > .. > m_n > 0)."""
    idx = _check_index(s)
    eps_v = mpf(default_eps(len(idx)) if eps is None else eps)
    if eps_v <= 0:
        raise DomainError("eps must be positive")
    if cutoff < 3 or cutoff % 2 == 0:
        raise DomainError("cutoff must be an odd integer >= 3")
    for _ in range(8):
        res = _mtv_tail(idx, prec, cutoff, terms)
        if res.error_bound <= eps_v:
            return res
        cutoff, terms = 2 * cutoff + 1, terms + 8
    return res


def contractions(s: Sequence[int]) -> list[tuple[int, ...]]:
    """All 2^{n-1} ways of replacing each comma by a comma or a plus."""
    s = tuple(s)
    out = []
    for cuts in itertools.product((False, True), repeat=len(s) - 1):
        cur = [s[0]]
        for merge, v in zip(cuts, s[1:]):
            if merge:
                cur[-1] += v
            else:
                cur.append(v)
        out.append(tuple(cur))
    return out


def mtv_star_numeric(
    s: Sequence[int], prec: int = DEFAULT_PREC, eps: float | None = None
) -> CertifiedValue:
    """t*(s_1, .., s_n): sum over odd m_1 >= .. >= m_n >= 1."""
    idx = _check_index(s)
    if eps is None:
        eps = default_eps(len(idx))
    parts = contractions(idx)
    acc = None
    for c in parts:
        v = mtv_numeric(c, prec, eps / len(parts))
        acc = v if acc is None else acc + v
    return acc


def mtv_direct(s: Sequence[int], prec: int = DEFAULT_PREC, outer: int = 2001) -> CertifiedValue:
    """Truncated nested sum with an integral tail bound.

    The outer variable runs over odd m_1 < outer; the rest of the sum is at
    most sum_{odd m >= outer} m^{-s_1} times prod_{i>1} t(s_i).  Converges
    slowly; meant for cross-checks only.
    """
    idx = _check_index(s)
    if any(v < 2 for v in idx):
        raise DomainError("the direct method needs every entry >= 2")
    if outer < 3 or outer % 2 == 0:
        raise DomainError("outer cutoff must be an odd integer >= 3")
    with mpmath.workprec(prec + GUARD_BITS):
        parts = _partial_sums(idx, outer)
        value = parts[0]
        inner = mpf(1)
        for v in idx[1:]:
            # t(s) <= 1 + 3^{-s} + int_3^inf x^{-s} dx / 2
            inner *= 1 + mpf(3) ** (-v) + mpf(3) ** (1 - v) / (2 * (v - 1))
        tail = _z_err_bound(idx[0], outer) * inner
        err = tail + abs(value) * len(idx) * outer * mpf(2) ** (-(prec + GUARD_BITS)) + abs(value) * _ulp_factor(prec)
    return CertifiedValue(value, err, prec)


# --- formula checks ---------------------------------------------------------


@dataclass(frozen=True)
class NumericCheck:
    lhs: CertifiedValue
    rhs: CertifiedValue
    residual: CertifiedValue
    eps: float
    passed: bool

    def to_json(self) -> dict:
        out = self.residual.to_json()
        out["pass"] = self.passed
        return out


def _weight_abs_total(f: MultiPoly, n: int, k: int) -> Fraction:
    return sum((abs(f(*c)) for c in compositions(k, n)), Fraction(0))


def numeric_lhs(
    family: str, f: MultiPoly, n: int, k: int, prec: int = DEFAULT_PREC, eps: float = 1e-20
) -> CertifiedValue:
    """sum over compositions of k into n positive parts of f times the summand."""
    if k < n:
        raise DomainError(f"k = {k} must be >= n = {n}")
    total_w = _weight_abs_total(f, n, k) or Fraction(1)
    each = eps / (2 * float(total_w) + 1)
    acc = CertifiedValue(mpf(0), mpf(0), prec)
    for comp in compositions(k, n):
        w = f(*comp)
        if not w:
            continue
        doubled = tuple(2 * c for c in comp)
        if family == "bernoulli":
            term = exact_value(
                math.prod((bernoulli_ratio(c) for c in comp), start=Fraction(1)), prec
            )
        elif family == "t-product":
            term = None
            for c in comp:
                v = t_even(c, prec)
                term = v if term is None else term * v
        elif family == "mtv":
            term = mtv_numeric(doubled, prec, each)
        elif family == "mtv-star":
            term = mtv_star_numeric(doubled, prec, each)
        else:
            raise DomainError(f"unknown family {family!r}")
        acc = acc + term * w
    return acc


def bernoulli_ratio(c: int) -> Fraction:
    """beta_{2c} / (2c)!"""
    return Fraction(beta(2 * c), factorial(2 * c))


def numeric_rhs(formula: Formula, k: int, prec: int = DEFAULT_PREC) -> CertifiedValue:
    """Right-hand side from zeta_even, t_even and the coefficient polynomials."""
    if k < formula.n:
        raise DomainError(f"k = {k} must be >= n = {formula.n}")
    top = min(formula.t_bound, k)
    acc = CertifiedValue(mpf(0), mpf(0), prec)
    for l, c in formula.terms:
        if l > top:
            continue
        ck = c(k)
        if not ck:
            continue
        if formula.family == "bernoulli":
            basis = exact_value(bernoulli_ratio(k - l), prec)
        elif l == k:
            continue  # t(0) = 0
        elif l == 0:
            basis = t_even(k, prec)
        else:
            basis = zeta_even(l, prec) * t_even(k - l, prec)
        acc = acc + basis * ck
    return acc


def verify_formula_numeric(
    formula: Formula, k: int, prec: int = DEFAULT_PREC, eps: float | None = None
) -> NumericCheck:
    if k < formula.n:
        raise DomainError(f"k = {k} must be >= n = {formula.n}")
    if eps is None:
        eps = default_eps(formula.n)
    lhs = numeric_lhs(formula.family, formula.weight, formula.n, k, prec, eps / 4)
    rhs = numeric_rhs(formula, k, prec)
    res = lhs - rhs
    ok = abs(res.value) <= res.error_bound + mpf(eps)
    return NumericCheck(lhs, rhs, res, eps, bool(ok))


def describe(check: NumericCheck) -> str:
    r = check.residual
    return (
        f"residual {mpmath.nstr(r.value, 5)} +/- {mpmath.nstr(r.error_bound, 5)}"
        f" (eps {check.eps:g})"
    )


__all__ = [
    "CertifiedValue",
    "DomainError",
    "NumericCheck",
    "contractions",
    "default_eps",
    "exact_value",
    "mtv_direct",
    "mtv_numeric",
    "mtv_star_numeric",
    "numeric_lhs",
    "numeric_rhs",
    "t_even",
    "verify_formula_numeric",
    "zeta_even",
]
