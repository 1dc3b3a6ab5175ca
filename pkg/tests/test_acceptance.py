"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; conftest.py prints them at the end of
the run.  ``python tests/test_acceptance.py`` prints the same lines without
pytest.
"""

from __future__ import annotations

import itertools
import time
from fractions import Fraction

from teven.appendix import derive, load_corpus, regenerate
from teven.cli import main as cli_main
from teven.expansion import expand, weight_norm
from teven.fg import a_matrix, a_matrix_inverse, c_lead, d_lead, f_poly, identity, matmul
from teven.formula import (
    PiMultiple,
    bernoulli_sum_formula,
    bound_violations,
    brute_force_lhs,
    evaluate_formula_exact,
    iter_monomials,
)
from teven.numeric import verify_formula_numeric
from teven.partitions import integer_partitions, monomial_symmetric, mtv_formula, mtv_star_formula
from teven.poly import MultiPoly, TruncatedSeries, UniPoly, series_F, series_H

RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, text: str) -> None:
    RESULTS[number] = f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'}: {text}"


def criterion_1() -> tuple[bool, str]:
    corpus = load_corpus()
    comparisons = regenerate(corpus)
    differ = [c.entry.label for c in comparisons if not c.equal]
    code = cli_main(["appendix", "--section", "all"])
    ok = not differ and code == 0
    return ok, f"appendix regeneration, {len(corpus) - len(differ)}/{len(corpus)} EQUAL, cli exit {code}"


def criterion_2() -> tuple[bool, str]:
    start = time.perf_counter()
    checked = 0
    bad = []
    for n in range(1, 5):
        for m in iter_monomials(n, 4):
            formula = bernoulli_sum_formula(m)
            f = MultiPoly.monomial(m)
            for k in range(n, 13):
                checked += 1
                if brute_force_lhs("bernoulli", f, n, k) != evaluate_formula_exact(formula, k):
                    bad.append((m, k))
    secs = time.perf_counter() - start
    return not bad, f"Bernoulli brute-force sweep, {checked} identities, {len(bad)} mismatches, {secs:.1f}s"


def symmetric_corpus(max_n: int = 4, max_degree: int = 4):
    for n in range(1, max_n + 1):
        for d in range(max_degree + 1):
            for shape in integer_partitions(d, n):
                yield n, monomial_symmetric(shape, n)


def criterion_3() -> tuple[bool, str]:
    count = 0
    problems = []
    for n, f in symmetric_corpus():
        for family in ("bernoulli", "t-product", "mtv", "mtv-star"):
            count += 1
            problems += bound_violations(derive(family, f, n))
    return not problems, f"degree bounds on {count} formulas over all four families, {len(problems)} violations"


def criterion_4() -> tuple[bool, str]:
    x = UniPoly.x()
    failures = []
    for m in range(16):
        row = sum((f_poly(m, i) * x ** (i - 1) for i in range(1, m + 2)), UniPoly())
        if row != UniPoly([-1]):
            failures.append(f"row sum m={m}")
        if sum(c_lead(m, i) for i in range(1, m + 2)) != (-1 if m == 0 else 0):
            failures.append(f"c sum m={m}")
        for i in range(1, m + 2):
            if f_poly(m, i).degree != m + 1 - i:
                failures.append(f"deg F m={m} i={i}")
            if not (-1) ** (m + i) * c_lead(m, i) > 0:
                failures.append(f"sign m={m} i={i}")
        if c_lead(m, 1) != (-1) ** (m + 1) or d_lead(m, 1) != -1:
            failures.append(f"c/d lead m={m}")
    for m in range(11):
        if matmul(a_matrix(m), a_matrix_inverse(m)) != identity(m):
            failures.append(f"inverse m={m}")
    return not failures, f"F/G invariants for m <= 15 and inverses for m <= 10, {len(failures)} failures"


def criterion_5() -> tuple[bool, str]:
    order = 20
    h = series_H(order)
    ders = [series_F(order)]
    for _ in range(8):
        ders.append(ders[-1].apply_d())
    failures = []
    for m in range(7):
        rhs = TruncatedSeries([], order)
        for i in range(m + 2):
            rhs = rhs + h**i * f_poly(m, i)
        if rhs != ders[m]:
            failures.append(f"D^{m}F")
    vectors = 0
    for n in range(1, 4):
        for mv in itertools.product(range(6), repeat=n):
            if weight_norm(mv) > 6:
                continue
            vectors += 1
            lhs = TruncatedSeries([1], order)
            for mj in mv:
                lhs = lhs * ders[mj]
            res = expand(mv)
            rhs = TruncatedSeries(res.r_polys[0].coeffs, order)
            for j in range(1, res.weight_norm + 1):
                rhs = rhs + ders[j - 1] * res.r_polys[j]
            if lhs != rhs:
                failures.append(str(mv))
    return not failures, f"series identities to order {order}, {vectors} exponent vectors, {len(failures)} failures"


def criterion_6() -> tuple[bool, str]:
    start = time.perf_counter()
    runs = 0
    failures = []
    for n, ks, eps in ((2, range(2, 7), 1e-18), (3, range(3, 6), 1e-10)):
        k = [MultiPoly.var(n, i) for i in range(1, n + 1)]
        e2 = sum((a * b for a, b in itertools.combinations(k, 2)), MultiPoly(n))
        p2 = sum((a * a for a in k), MultiPoly(n))
        for name, f in (("1", MultiPoly.constant(n, 1)), ("e2", e2), ("p2", p2)):
            for build in (mtv_formula, mtv_star_formula):
                formula = build(f, n)
                for kk in ks:
                    runs += 1
                    if not verify_formula_numeric(formula, kk, 256, eps).passed:
                        failures.append(f"{formula.family} n={n} f={name} k={kk}")
    secs = time.perf_counter() - start
    return not failures, f"numeric confirmation, {runs} checks at 256 bits, {len(failures)} failures, {secs:.1f}s"


def criterion_7() -> tuple[bool, str]:
    one = MultiPoly.constant(2, 1)
    t22 = PiMultiple(Fraction(1, 384), 4)
    t22_star = PiMultiple(Fraction(5, 384), 4)
    got = [
        evaluate_formula_exact(mtv_formula(one, 2), 2),
        brute_force_lhs("mtv", one, 2, 2),
        evaluate_formula_exact(mtv_star_formula(one, 2), 2),
        brute_force_lhs("mtv-star", one, 2, 2),
    ]
    ok = got == [t22, t22, t22_star, t22_star]
    return ok, "t(2,2) = pi^4/384 and t*(2,2) = 5pi^4/384 from formulas and from harmonic-product algebra"


def _run(number: int, fn) -> None:
    ok, text = fn()
    record(number, ok, text)
    assert ok, RESULTS[number]


def test_criterion_1_appendix():
    _run(1, criterion_1)


def test_criterion_2_bernoulli_oracle():
    _run(2, criterion_2)


def test_criterion_3_degree_bounds():
    _run(3, criterion_3)


def test_criterion_4_fg_invariants():
    _run(4, criterion_4)


def test_criterion_5_series():
    _run(5, criterion_5)


def test_criterion_6_numeric():
    _run(6, criterion_6)


def test_criterion_7_spot_values():
    _run(7, criterion_7)


if __name__ == "__main__":
    import contextlib
    import io

    for number, fn in enumerate(
        (criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7), start=1
    ):
        with contextlib.redirect_stdout(io.StringIO()):
            ok, text = fn()
        record(number, ok, text)
        print(RESULTS[number])
