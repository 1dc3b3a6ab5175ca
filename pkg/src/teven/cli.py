"""Command-line front end.

Exit codes: 0 success, 1 a verification or comparison failed, 2 bad input
(parse errors, arity, k range), 3 weight not symmetric, 4 cache directory
not writable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from . import appendix
from .cache import CacheError, FormulaCache, dumps
from .fg import CapacityError, f_poly, g_poly
from .expansion import expand
from .formula import Formula, brute_force_lhs, evaluate_formula_exact
from .numeric import DEFAULT_PREC, DomainError, default_eps, describe, verify_formula_numeric
from .parser import ParseError, parse_poly
from .partitions import SymmetryError, symmetrize
from .poly import MultiPoly

KINDS = {"bernoulli": "bernoulli", "tprod": "t-product", "mtv": "mtv", "mtv-star": "mtv-star"}

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_SYMMETRY, EXIT_CACHE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _err(msg: str) -> None:
    print(f"teven: {msg}", file=sys.stderr)


def _weight(args: argparse.Namespace) -> MultiPoly:
    if args.n < 1:
        raise InputError("--n must be >= 1")
    try:
        f = parse_poly(args.f, args.n)
    except ParseError as exc:
        raise InputError(f"cannot parse --f {args.f!r}: {exc}") from None
    if getattr(args, "symmetrize", False):
        f = symmetrize(f)
    return f


def _k_range(text: str, n: int) -> list[int]:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise InputError(f"bad --k range {text!r}; expected a..b") from None
    if a > b:
        raise InputError(f"empty --k range {text!r}")
    if a < n:
        raise InputError(f"--k starts at {a}, below n = {n}")
    return list(range(a, b + 1))


def _cache_for(args: argparse.Namespace) -> FormulaCache | None:
    root = getattr(args, "cache_dir", None) or os.environ.get("TEVEN_CACHE_DIR")
    return FormulaCache(root) if root else None


def obtain_formula(family: str, f: MultiPoly, n: int, cache: FormulaCache | None = None) -> Formula:
    if cache is not None:
        hit = cache.get(family, n, f)
        if hit is not None:
            return hit
    formula = appendix.derive(family, f, n)
    if cache is not None:
        cache.put(formula)
    return formula


def render(formula: Formula, fmt: str) -> str:
    if fmt == "json":
        return dumps(formula)
    if fmt == "latex":
        return formula.to_latex() + "\n"
    return formula.to_text() + "\n"


# --- subcommands -------------------------------------------------------------


def cmd_derive(args: argparse.Namespace) -> int:
    family = KINDS[args.kind]
    f = _weight(args)
    formula = obtain_formula(family, f, args.n, _cache_for(args))
    out = render(formula, args.format)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _exact_check(family: str, formula: Formula, k: int) -> tuple[bool, str]:
    lhs = brute_force_lhs(family, formula.weight, formula.n, k)
    rhs = evaluate_formula_exact(formula, k)
    return lhs == rhs, f"lhs {lhs} rhs {rhs}"


def _check_one(job: tuple) -> tuple[int, bool, str]:
    family, formula_json, k, mode, prec, eps = job
    formula = Formula.from_json(formula_json)
    parts = []
    ok = True
    exact_possible = family in ("bernoulli", "t-product") or formula.n <= 2
    if mode in ("exact", "both"):
        if exact_possible:
            good, msg = _exact_check(family, formula, k)
            ok &= good
            parts.append(f"exact {'ok' if good else 'mismatch'} ({msg})")
        elif mode == "exact":
            # no exact oracle beyond depth 2 for multiple t-values
            mode = "numeric"
    if mode in ("numeric", "both"):
        chk = verify_formula_numeric(formula, k, prec, eps)
        ok &= chk.passed
        parts.append(f"numeric {describe(chk)}")
    return k, ok, "; ".join(parts)


def cmd_verify(args: argparse.Namespace) -> int:
    family = KINDS[args.kind]
    f = _weight(args)
    ks = _k_range(args.k, args.n)
    formula = obtain_formula(family, f, args.n, _cache_for(args))
    eps = args.eps if args.eps is not None else default_eps(args.n)
    jobs = [(family, formula.to_json(), k, args.mode, args.prec, eps) for k in ks]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_check_one, jobs))
    else:
        results = [_check_one(j) for j in jobs]
    all_ok = True
    for k, ok, msg in sorted(results):
        all_ok &= ok
        line = f"k={k} {'PASS' if ok else 'FAIL'}"
        print(f"{line}  {msg}" if args.verbose else line)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_appendix(args: argparse.Namespace) -> int:
    entries = appendix.load_corpus(args.section)
    all_ok = True
    for cmp in appendix.regenerate(entries):
        status = "EQUAL" if cmp.equal else "DIFFER"
        all_ok &= cmp.equal
        print(f"{status} {cmp.entry.label}")
        if args.diff and not cmp.equal:
            for line in cmp.diff_lines():
                print(line)
    print(f"{len(entries)} entries, {'all EQUAL' if all_ok else 'some DIFFER'}")
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_cache(args: argparse.Namespace) -> int:
    cache = FormulaCache.from_env(args.dir)
    if args.action == "list":
        for e in cache.entries():
            fm = e.formula
            print(f"{e.path.name}\t{fm.family}\tn={fm.n}\tf={fm.weight.to_text()}")
        return EXIT_OK
    removed = cache.purge()
    print(f"removed {removed} entries")
    return EXIT_OK


def cmd_tables(args: argparse.Namespace) -> int:
    for m in range(args.m + 1):
        for i in range(m + 2):
            print(f"F[{m},{i}] = {f_poly(m, i).to_text()}")
        for i in range(1, m + 2):
            print(f"G[{m},{i}] = {g_poly(m, i).to_text()}")
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    try:
        m = [int(v) for v in args.m.split(",")]
    except ValueError:
        raise InputError(f"bad exponent vector {args.m!r}") from None
    res = expand(m)
    print(f"|m| = {res.weight_norm}, T = {res.t_bound}")
    for j, r in enumerate(res.r_polys):
        print(f"R_{j} = {r.to_text()}")
    return EXIT_OK


# --- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="teven", description="Weighted sum formulas for multiple t-values.")
    sub = p.add_subparsers(dest="command", required=True)

    def weight_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--kind", choices=sorted(KINDS), required=True)
        sp.add_argument("--n", type=int, required=True, help="depth")
        sp.add_argument("--f", default="1", help='weight polynomial in k1..kn, e.g. "k1^2*k2"')
        sp.add_argument("--symmetrize", action="store_true", help="average f over permutations first")
        sp.add_argument("--cache-dir", help="formula cache directory (default: $TEVEN_CACHE_DIR, if set)")

    d = sub.add_parser("derive", help="derive a closed formula")
    weight_args(d)
    d.add_argument("--format", choices=("text", "latex", "json"), default="text")
    d.add_argument("--out", help="write to this file instead of stdout")
    d.set_defaults(func=cmd_derive)

    v = sub.add_parser("verify", help="check a derived formula for a range of k")
    weight_args(v)
    v.add_argument("--k", required=True, help="range a..b (or a single value)")
    v.add_argument("--mode", choices=("exact", "numeric", "both"), default="exact")
    v.add_argument("--prec", type=int, default=DEFAULT_PREC, help="working precision in bits")
    v.add_argument("--eps", type=float, default=None)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("-v", "--verbose", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("appendix", help="regenerate the embedded identity corpus")
    a.add_argument("--section", choices=appendix.SECTIONS + ("all",), default="all")
    a.add_argument("--diff", action="store_true")
    a.set_defaults(func=cmd_appendix)

    c = sub.add_parser("cache", help="list or purge the formula cache")
    c.add_argument("--dir", help="cache directory (default: $TEVEN_CACHE_DIR or ~/.cache/teven)")
    c.add_argument("action", choices=("list", "purge"))
    c.set_defaults(func=cmd_cache)

    t = sub.add_parser("tables", help="dump F and G polynomials")
    t.add_argument("--m", type=int, default=3)
    t.set_defaults(func=cmd_tables)

    e = sub.add_parser("expand", help="dump the R_j polynomials for an exponent vector")
    e.add_argument("--m", required=True, help="comma separated, e.g. 2,0")
    e.set_defaults(func=cmd_expand)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DomainError, CapacityError) as exc:
        _err(str(exc))
        return EXIT_INPUT
    except SymmetryError as exc:
        _err(f"{exc}; pass --symmetrize to average it")
        return EXIT_SYMMETRY
    except CacheError as exc:
        _err(str(exc))
        return EXIT_CACHE
    except ValueError as exc:
        _err(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
