"""Exact polynomial algebra over the rationals.

``UniPoly`` is dense (constant term first), ``MultiPoly`` is a sparse map from
exponent vectors to coefficients.  ``TruncatedSeries`` is a small helper for
checking generating-function identities term by term.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .arith import beta, factorial, format_rational, parse_rational

Rat = Fraction | int


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    """Univariate polynomial with exact rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rat] = ()) -> None:
        self.coeffs: tuple[Fraction, ...] = _trim([Fraction(c) for c in coeffs])

    @classmethod
    def constant(cls, c: Rat) -> "UniPoly":
        return cls([c])

    @classmethod
    def x(cls) -> "UniPoly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, c: Rat, e: int) -> "UniPoly":
        return cls([0] * e + [c])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, e: int) -> Fraction:
        if 0 <= e < len(self.coeffs):
            return self.coeffs[e]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self.to_text()!r})"

    @staticmethod
    def _coerce(other: "UniPoly | Rat") -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly([other])

    def __add__(self, other: "UniPoly | Rat") -> "UniPoly":
        o = self._coerce(other)
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly | Rat") -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Rat) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other: "UniPoly | Rat") -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly([c * a for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = UniPoly([1])
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, point: Rat) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * point + c
        return acc

    evaluate = __call__

    def compose_linear(self, a: Rat, b: Rat) -> "UniPoly":
        """Return p(a*x + b)."""
        lin = UniPoly([b, a])
        acc = UniPoly()
        for c in reversed(self.coeffs):
            acc = acc * lin + c
        return acc

    def is_even(self) -> bool:
        return all(c == 0 for c in self.coeffs[1::2])

    def has_integer_coeffs(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "UniPoly":
        return cls(parse_rational(s) for s in data)

    def to_text(self, var: str = "x") -> str:
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if c == 0:
                continue
            mono = "" if e == 0 else (var if e == 1 else f"{var}^{e}")
            terms.append((c, mono))
        return _join_terms(terms)


def _join_terms(terms: list[tuple[Fraction, str]]) -> str:
    if not terms:
        return "0"
    parts = []
    for idx, (c, mono) in enumerate(terms):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = format_rational(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_rational(a)}*{mono}"
        if idx == 0:
            parts.append(f"-{body}" if sign == "-" else body)
        else:
            parts.append(f" {sign} {body}")
    return "".join(parts)


def uni_add(p: UniPoly, q: UniPoly) -> UniPoly:
    return p + q


def uni_mul(p: UniPoly, q: UniPoly) -> UniPoly:
    return p * q


def uni_scale(p: UniPoly, c: Rat) -> UniPoly:
    return p * c


def uni_derivative(p: UniPoly) -> UniPoly:
    return p.derivative()


def uni_eval(p: UniPoly, point: Rat) -> Fraction:
    return p(point)


def uni_compose_linear(p: UniPoly, a: Rat, b: Rat) -> UniPoly:
    return p.compose_linear(a, b)


def interpolate(points: Sequence[tuple[Rat, Rat]]) -> UniPoly:
    """Lagrange interpolation through ``points`` (distinct abscissas)."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissas must be pairwise distinct")
    out = UniPoly()
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        if yi == 0:
            continue
        basis = UniPoly([1])
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly([-xj, 1])
                denom *= xi - xj
        out = out + basis * (Fraction(yi) / denom)
    return out


Exponents = tuple[int, ...]


def grlex_key(exps: Exponents) -> tuple:
    """Sort key putting higher total degree first, then lex-larger first."""
    return (-sum(exps), tuple(-e for e in exps))


class MultiPoly:
    """Polynomial in x_1..x_n stored as {exponent tuple: coefficient}."""

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[Exponents, Rat] | None = None) -> None:
        if arity < 1:
            raise ValueError("MultiPoly arity must be >= 1")
        self.arity = arity
        clean: dict[Exponents, Fraction] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent vector {exps} for arity {arity}")
            c = Fraction(c)
            if c:
                clean[exps] = clean.get(exps, Fraction(0)) + c
        self.terms: dict[Exponents, Fraction] = {e: c for e, c in clean.items() if c}

    @classmethod
    def constant(cls, arity: int, c: Rat) -> "MultiPoly":
        return cls(arity, {(0,) * arity: c})

    @classmethod
    def var(cls, arity: int, index: int) -> "MultiPoly":
        """The variable x_index (1-based)."""
        if not 1 <= index <= arity:
            raise ValueError(f"variable index {index} outside 1..{arity}")
        exps = [0] * arity
        exps[index - 1] = 1
        return cls(arity, {tuple(exps): 1})

    @classmethod
    def monomial(cls, exps: Sequence[int], c: Rat = 1) -> "MultiPoly":
        return cls(len(exps), {tuple(exps): c})

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self) -> Iterator[tuple[Exponents, Fraction]]:
        """Terms in graded-lex order."""
        for e in sorted(self.terms, key=grlex_key):
            yield e, self.terms[e]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.arity}, {self.to_text()!r})"

    def _check(self, other: "MultiPoly") -> None:
        if other.arity != self.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: "MultiPoly | Rat") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.arity, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return MultiPoly(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.arity, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "MultiPoly | Rat") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.arity, other)
        return self + (-other)

    def __rsub__(self, other: Rat) -> "MultiPoly":
        return MultiPoly.constant(self.arity, other) - self

    def __mul__(self, other: "MultiPoly | Rat") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            c = Fraction(other)
            return MultiPoly(self.arity, {e: c * v for e, v in self.terms.items()})
        self._check(other)
        out: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return MultiPoly(self.arity, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "MultiPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = MultiPoly.constant(self.arity, 1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __call__(self, *point: Rat) -> Fraction:
        if len(point) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(point)}")
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(point, exps):
                if e:
                    term *= Fraction(x) ** e
            total += term
        return total

    def permute(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute x_i -> x_{perm[i]} (0-based permutation of positions)."""
        out = {}
        for exps, c in self.terms.items():
            new = [0] * self.arity
            for i, e in enumerate(exps):
                new[perm[i]] = e
            out[tuple(new)] = c
        return MultiPoly(self.arity, out)

    def to_json(self) -> list[dict]:
        return [{"exponents": list(e), "coeff": format_rational(c)} for e, c in self.items()]

    @classmethod
    def from_json(cls, arity: int, data: Sequence[Mapping]) -> "MultiPoly":
        return cls(arity, {tuple(t["exponents"]): parse_rational(t["coeff"]) for t in data})

    def to_text(self, var: str = "k") -> str:
        """Canonical printed form, re-parsable by :mod:`teven.parser`."""
        terms = []
        for exps, c in self.items():
            factors = []
            for i, e in enumerate(exps, start=1):
                if e == 1:
                    factors.append(f"{var}{i}")
                elif e > 1:
                    factors.append(f"{var}{i}^{e}")
            terms.append((c, "*".join(factors)))
        return _join_terms(terms)


class TruncatedSeries:
    """Power series sum_{i<=order} c_i x^i with everything above ``order`` dropped."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable[Rat], order: int) -> None:
        cs = [Fraction(c) for c in coeffs][: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs: list[Fraction] = cs
        self.order = order

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i <= self.order else Fraction(0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __repr__(self) -> str:
        return f"TruncatedSeries({[format_rational(c) for c in self.coeffs]}, order={self.order})"

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = min(self.order, other.order)
        return TruncatedSeries((self[i] + other[i] for i in range(n + 1)), n)

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries((-c for c in self.coeffs), self.order)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def __mul__(self, other: "TruncatedSeries | UniPoly | Rat") -> "TruncatedSeries":
        if isinstance(other, UniPoly):
            other = TruncatedSeries(other.coeffs, self.order)
        if not isinstance(other, TruncatedSeries):
            c = Fraction(other)
            return TruncatedSeries((c * a for a in self.coeffs), self.order)
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(out, n)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "TruncatedSeries":
        out = TruncatedSeries([1], self.order)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if other[0] == 0:
            raise ZeroDivisionError("series divisor has zero constant term")
        n = min(self.order, other.order)
        q: list[Fraction] = []
        for i in range(n + 1):
            acc = self[i] - sum((q[j] * other[i - j] for j in range(i)), Fraction(0))
            q.append(acc / other[0])
        return TruncatedSeries(q, n)

    def apply_d(self) -> "TruncatedSeries":
        """The operator x d/dx."""
        return TruncatedSeries((i * c for i, c in enumerate(self.coeffs)), self.order)


def series_exp(order: int) -> TruncatedSeries:
    return TruncatedSeries((Fraction(1, factorial(i)) for i in range(order + 1)), order)


def series_F(order: int) -> TruncatedSeries:
    """x/2 - x/(e^x + 1) = sum_i beta_{2i}/(2i)! x^{2i}."""
    return TruncatedSeries(
        (Fraction(beta(i), factorial(i)) if i % 2 == 0 else 0 for i in range(order + 1)),
        order,
    )


def series_H(order: int) -> TruncatedSeries:
    """x/(e^x + 1), computed by exact series division."""
    x = TruncatedSeries([0, 1], order)
    denom = series_exp(order) + TruncatedSeries([1], order)
    return x / denom


def series_applyD(s: TruncatedSeries) -> TruncatedSeries:
    return s.apply_d()


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All (k_1..k_parts) with k_j >= 1 summing to ``total``, lexicographic."""
    if parts < 1 or total < parts:
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in cuts:
            out.append(c - prev)
            prev = c
        out.append(total - prev)
        yield tuple(out)
