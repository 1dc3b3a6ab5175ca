"""Weighted sum formulas for products of Bernoulli numbers and of t-values.

A :class:`Formula` encodes an identity

    sum_{k_1+..+k_n = k, k_j >= 1} f(k_1..k_n) * (basis product)
        = sum_l coeff_l(k) * Z_l * V(2k - 2l)

For the ``bernoulli`` family the basis product is prod beta_{2k_j}/(2k_j)!
and ``Z_l V(2k-2l)`` is beta_{2k-2l}/(2k-2l)!.  For the t families the left
side is a product of t-values (``t-product``), a multiple t-value (``mtv``)
or a multiple t-star value (``mtv-star``) and the right side is
zeta(2l) t(2k-2l).

Terms are stored in canonical form: the l = 0 coefficient multiplies t(2k)
directly, i.e. the factor zeta(0) = -1/2 is already absorbed.  The l-sum is
truncated at min(T, k) when evaluated; t(0) = 0 kills l = k.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .arith import bernoulli, beta, factorial, format_rational
from .expansion import expand
from .poly import MultiPoly, UniPoly, compositions

FAMILIES = ("bernoulli", "t-product", "mtv", "mtv-star")
T_FAMILIES = ("t-product", "mtv", "mtv-star")
ZETA0 = Fraction(-1, 2)
CONVENTIONS = {"zeta0": "-1/2", "t0": "0"}


def t_bound(r: int, n: int) -> int:
    """T = max(floor((r+n-2)/2), floor((n-1)/2)) for a weight of degree r."""
    return max((r + n - 2) // 2, (n - 1) // 2)


@dataclass(frozen=True)
class Formula:
    family: str
    n: int
    weight: MultiPoly
    terms: tuple[tuple[int, UniPoly], ...]
    conventions: Mapping[str, str] = field(default_factory=lambda: dict(CONVENTIONS))

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise ValueError(f"unknown formula family {self.family!r}")
        if self.weight.arity != self.n:
            raise ValueError(f"weight arity {self.weight.arity} != depth {self.n}")
        ls = [l for l, _ in self.terms]
        if ls != sorted(set(ls)) or any(not c for _, c in self.terms):
            raise ValueError("terms must have strictly increasing l and nonzero coefficients")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Formula):
            return NotImplemented
        return (
            self.family == other.family
            and self.n == other.n
            and self.weight == other.weight
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.family, self.n, self.weight, self.terms))

    @property
    def t_bound(self) -> int:
        return t_bound(max(self.weight.degree, 0), self.n)

    def coeff(self, l: int) -> UniPoly:
        for ll, c in self.terms:
            if ll == l:
                return c
        return UniPoly()

    def raw_terms(self) -> tuple[tuple[int, UniPoly], ...]:
        """Terms with the l = 0 coefficient multiplying zeta(0) t(2k)."""
        if self.family == "bernoulli":
            return self.terms
        return tuple((l, c * (1 / ZETA0) if l == 0 else c) for l, c in self.terms)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "n": self.n,
            "f": self.weight.to_json(),
            "terms": [{"l": l, "coeff": c.to_json()} for l, c in self.terms],
            "conventions": dict(sorted(self.conventions.items())),
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Formula":
        n = int(data["n"])
        return cls(
            data["family"],
            n,
            MultiPoly.from_json(n, data["f"]),
            tuple((int(t["l"]), UniPoly.from_json(t["coeff"])) for t in data["terms"]),
            dict(data.get("conventions", CONVENTIONS)),
        )

    def to_text(self) -> str:
        return render_text(self)

    def to_latex(self) -> str:
        return render_latex(self)


def combine(family: str, n: int, weight: MultiPoly, parts: Iterable[tuple[Fraction, Formula]]) -> Formula:
    """Canonical sum of c * formula over ``parts``."""
    acc: dict[int, UniPoly] = {}
    for c, f in parts:
        for l, p in f.terms:
            acc[l] = acc.get(l, UniPoly()) + p * c
    terms = tuple((l, acc[l]) for l in sorted(acc) if acc[l])
    return Formula(family, n, weight, terms)


def _monomial_weight(m: Sequence[int]) -> MultiPoly:
    return MultiPoly.monomial(tuple(m))


def _inner_sums(m: tuple[int, ...]) -> dict[int, UniPoly]:
    """l -> sum_j a_{jl} (k-l)^{j-1} 2^{j-1}."""
    res = expand(m)
    total = res.weight_norm
    out: dict[int, UniPoly] = {}
    for l in range(0, (total - 1) // 2 + 1):
        acc = UniPoly()
        shift = UniPoly([-l, 1])
        for j in range(1, total - 2 * l + 1):
            a = res.a(j, l)
            if a:
                acc = acc + (shift ** (j - 1)) * (a * 2 ** (j - 1))
        if acc:
            out[l] = acc
    bound = res.t_bound
    extra = [l for l in out if l > bound]
    if extra:
        raise AssertionError(f"nonzero terms beyond T={bound} for {m}: {extra}")
    return out


@functools.lru_cache(maxsize=None)
def _bernoulli_monomial(m: tuple[int, ...]) -> Formula:
    scale = Fraction(1, 2 ** sum(m))
    terms = tuple((l, p * scale) for l, p in sorted(_inner_sums(m).items()))
    return Formula("bernoulli", len(m), _monomial_weight(m), terms)


@functools.lru_cache(maxsize=None)
def _t_product_monomial(m: tuple[int, ...]) -> Formula:
    n = len(m)
    total = sum(m) + n
    terms = []
    for l, p in sorted(_inner_sums(m).items()):
        # (-1)^n (2l)!/B_{2l} / 2^{|m| + 2l - 2} times the 2^{j-1}-weighted core
        c = Fraction((-1) ** n * factorial(2 * l)) / bernoulli(2 * l) / Fraction(2) ** (total + 2 * l - 2)
        if l == 0:
            c *= ZETA0
        terms.append((l, p * c))
    return Formula("t-product", n, _monomial_weight(m), tuple(terms))


def bernoulli_sum_formula(m_vec: Sequence[int]) -> Formula:
    """sum k_1^{m_1}..k_n^{m_n} prod beta_{2k_j}/(2k_j)! in closed form."""
    return _bernoulli_monomial(tuple(int(v) for v in m_vec))


def t_product_formula(m_vec: Sequence[int]) -> Formula:
    """sum k_1^{m_1}..k_n^{m_n} prod t(2k_j) in closed form."""
    return _t_product_monomial(tuple(int(v) for v in m_vec))


def weighted_formula(f: MultiPoly, n: int, family: str = "t-product") -> Formula:
    if f.arity != n:
        raise ValueError(f"weight has arity {f.arity} but depth is {n}")
    if family == "bernoulli":
        mono = bernoulli_sum_formula
    elif family == "t-product":
        mono = t_product_formula
    else:
        raise ValueError(f"weighted_formula handles bernoulli and t-product, not {family!r}")
    return combine(family, n, f, ((c, mono(e)) for e, c in f.terms.items()))


def bound_violations(formula: Formula) -> list[str]:
    """Check l <= T and deg coeff_l <= r + n - 2l - 1; empty list when fine."""
    r = max(formula.weight.degree, 0)
    n = formula.n
    bound = formula.t_bound
    out = []
    for l, c in formula.terms:
        if l > bound:
            out.append(f"term l={l} exceeds T={bound}")
        if c.degree > r + n - 2 * l - 1:
            out.append(f"deg coeff_{l} = {c.degree} > r+n-2l-1 = {r + n - 2 * l - 1}")
    return out


# --- exact evaluation -----------------------------------------------------


@dataclass(frozen=True)
class PiMultiple:
    """An exact value ``coeff * pi**power``."""

    coeff: Fraction
    power: int

    def __add__(self, other: "PiMultiple") -> "PiMultiple":
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        if self.power != other.power:
            raise ValueError("cannot add different powers of pi exactly")
        return PiMultiple(self.coeff + other.coeff, self.power)

    def __sub__(self, other: "PiMultiple") -> "PiMultiple":
        return self + PiMultiple(-other.coeff, other.power)

    def __mul__(self, other: "PiMultiple | Fraction | int") -> "PiMultiple":
        if isinstance(other, PiMultiple):
            return PiMultiple(self.coeff * other.coeff, self.power + other.power)
        return PiMultiple(self.coeff * other, self.power)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{format_rational(self.coeff)}*pi^{self.power}"


def t_even_exact(k: int) -> PiMultiple:
    """t(2k) = (-1)^{k+1} beta_{2k} / (2 (2k)!) pi^{2k}; t(0) = 0."""
    if k < 0:
        raise ValueError("t(2k) needs k >= 0")
    if k == 0:
        return PiMultiple(Fraction(0), 0)
    return PiMultiple((-1) ** (k + 1) * beta(2 * k) / (2 * factorial(2 * k)), 2 * k)


def zeta_even_exact(l: int) -> PiMultiple:
    """zeta(2l) = (-1)^{l+1} B_{2l} (2 pi)^{2l} / (2 (2l)!); zeta(0) = -1/2."""
    if l < 0:
        raise ValueError("zeta(2l) needs l >= 0")
    return PiMultiple((-1) ** (l + 1) * bernoulli(2 * l) * 2 ** (2 * l) / (2 * factorial(2 * l)), 2 * l)


def _check_k(n: int, k: int) -> None:
    if k < n:
        raise ValueError(f"k = {k} must be >= n = {n}")


def evaluate_formula_exact(formula: Formula, k: int) -> Fraction | PiMultiple:
    """Right-hand side at ``k``: a rational (bernoulli) or a rational times pi^{2k}."""
    _check_k(formula.n, k)
    top = min(formula.t_bound, k)
    if formula.family == "bernoulli":
        total = Fraction(0)
        for l, c in formula.terms:
            if l <= top:
                total += c(k) * Fraction(beta(2 * k - 2 * l), factorial(2 * k - 2 * l))
        return total
    total = PiMultiple(Fraction(0), 2 * k)
    for l, c in formula.terms:
        if l > top:
            continue
        basis = t_even_exact(k) if l == 0 else zeta_even_exact(l) * t_even_exact(k - l)
        if basis.coeff:
            total = total + basis * c(k)
    return total


def brute_force_lhs(family: str, f: MultiPoly, n: int, k: int) -> Fraction | PiMultiple:
    """Left-hand side by direct iteration over all compositions of k.

    ``mtv`` and ``mtv-star`` are exact only through depth 2 (via the
    harmonic product t(a)t(b) = t(a,b) + t(b,a) + t(a+b)) and need a
    symmetric weight there.
    """
    if f.arity != n:
        raise ValueError(f"weight has arity {f.arity} but depth is {n}")
    _check_k(n, k)
    if family == "bernoulli":
        total = Fraction(0)
        for comp in compositions(k, n):
            w = f(*comp)
            if w:
                total += w * math.prod(
                    (Fraction(beta(2 * kj), factorial(2 * kj)) for kj in comp), start=Fraction(1)
                )
        return total
    if family == "t-product" or n == 1:
        return _t_product_lhs(f, n, k)
    if family in ("mtv", "mtv-star"):
        if n > 2:
            raise ValueError("exact multiple t-value sums are only available for depth <= 2")
        if f.permute((1, 0)) != f:
            raise ValueError("depth-2 exact evaluation needs a symmetric weight")
        # sum f t(2a,2b) = 1/2 sum f (t(2a)t(2b) - t(2k)); t*(a,b) = t(a,b) + t(a+b)
        prod = _t_product_lhs(f, 2, k)
        diag = t_even_exact(k) * sum((f(*c) for c in compositions(k, 2)), Fraction(0))
        sign = -1 if family == "mtv" else 1
        return PiMultiple(Fraction(prod.coeff + sign * diag.coeff, 2), 2 * k)
    raise ValueError(f"unknown family {family!r}")


def _t_product_lhs(f: MultiPoly, n: int, k: int) -> PiMultiple:
    total = Fraction(0)
    for comp in compositions(k, n):
        w = f(*comp)
        if w:
            total += w * math.prod((t_even_exact(kj).coeff for kj in comp), start=Fraction(1))
    return PiMultiple(total, 2 * k)


# --- rendering -------------------------------------------------------------


def _weight_text(f: MultiPoly) -> str:
    if f == MultiPoly.constant(f.arity, 1):
        return ""
    text = f.to_text()
    return f"({text}) * " if len(f.terms) > 1 else f"{text} * "


def _lhs_text(formula: Formula) -> str:
    n = formula.n
    args = ",".join(f"2k{i}" for i in range(1, n + 1))
    if formula.family == "bernoulli":
        basis = " ".join(f"b(2k{i})" for i in range(1, n + 1))
    elif formula.family == "t-product":
        basis = " ".join(f"t(2k{i})" for i in range(1, n + 1))
    elif formula.family == "mtv":
        basis = f"t({args})"
    else:
        basis = f"t*({args})"
    return f"sum^({n}) {_weight_text(formula.weight)}{basis}"


def _shift_text(l: int, sym: str) -> str:
    return f"{sym}(2k)" if l == 0 else f"{sym}(2k-{2 * l})"


def render_text(formula: Formula) -> str:
    """One-line plain text rendering; b(m) stands for beta_m / m!."""
    rhs = []
    for l, c in formula.terms:
        if formula.family == "bernoulli":
            basis = _shift_text(l, "b")
        else:
            basis = _shift_text(l, "t") if l == 0 else f"zeta({2 * l})*{_shift_text(l, 't')}"
        rhs.append(f"({c.to_text('k')})*{basis}")
    return f"{_lhs_text(formula)} = {' + '.join(rhs) if rhs else '0'}"


def _latex_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return rf"\frac{{{q.numerator}}}{{{q.denominator}}}"


def _latex_poly(p: UniPoly, var: str = "k") -> str:
    parts = []
    for e in range(p.degree, -1, -1):
        c = p[e]
        if c == 0:
            continue
        mono = "" if e == 0 else (var if e == 1 else f"{var}^{{{e}}}")
        a = abs(c)
        body = _latex_rational(a) if (not mono or a != 1) else ""
        body += mono
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out


def _latex_weight(f: MultiPoly) -> str:
    if f == MultiPoly.constant(f.arity, 1):
        return ""
    terms = []
    for exps, c in f.items():
        mono = "".join(
            f"k_{{{i}}}" + (f"^{{{e}}}" if e > 1 else "") for i, e in enumerate(exps, start=1) if e
        )
        a = abs(c)
        body = (_latex_rational(a) if (a != 1 or not mono) else "") + mono
        terms.append(("-" if c < 0 else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += sign + body
    return f"\\left({out}\\right)" if len(terms) > 1 else out


def render_latex(formula: Formula) -> str:
    n = formula.n
    args = ",".join(f"2k_{{{i}}}" for i in range(1, n + 1))
    if formula.family == "bernoulli":
        basis = "".join(rf"\beta_{{2k_{{{i}}}}}" for i in range(1, n + 1))
        basis = rf"\frac{{{basis}}}{{{''.join(f'(2k_{{{i}}})!' for i in range(1, n + 1))}}}"
    elif formula.family == "t-product":
        basis = "".join(f"t(2k_{{{i}}})" for i in range(1, n + 1))
    elif formula.family == "mtv":
        basis = f"t({args})"
    else:
        basis = rf"t^{{\star}}({args})"
    weight = _latex_weight(formula.weight)
    lhs = rf"\sum\nolimits^{{({n})}} {weight}{' ' if weight else ''}{basis}"
    rhs = []
    for l, c in formula.terms:
        arg = "2k" if l == 0 else f"2k-{2 * l}"
        if formula.family == "bernoulli":
            b = rf"\frac{{\beta_{{{arg}}}}}{{({arg})!}}"
        else:
            b = f"t({arg})" if l == 0 else rf"\zeta({2 * l})t({arg})"
        single = sum(1 for v in c.coeffs if v) == 1
        rhs.append(f"{_latex_poly(c)}{b}" if single else rf"\left({_latex_poly(c)}\right){b}")
    body = "".join(r if i == 0 or r.startswith("-") else "+" + r for i, r in enumerate(rhs))
    return f"{lhs}={body or '0'}"


def iter_monomials(n: int, max_total: int) -> Iterable[tuple[int, ...]]:
    """All exponent vectors of length n with entry sum <= max_total."""
    for m in itertools.product(range(max_total + 1), repeat=n):
        if sum(m) <= max_total:
            yield m
