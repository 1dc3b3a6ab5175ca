"""Dev-only: turn the LaTeX appendix into src/teven/data/appendix.json.

Usage: python tools/transcribe_appendix.py SOURCE.md [OUT.json]

Needs sympy, which the package itself does not depend on.  Each entry keeps
the factored right-hand side as it was read, plus the expanded coefficient
of every basis term, so a reviewer can compare both against the source.
"""

from __future__ import annotations

import itertools
import json
import re
import sys
from pathlib import Path

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from teven.parser import parse_poly  # noqa: E402

TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)
K = sympy.Symbol("k")

# keyed on the tail of each subsection heading
SECTION_HEADS = {
    "of the Bernoulli numbers": "A1",
    "of $t$-values": "A2",
    "of multiple $t$-values": "A3",
}


def section_of(heading: str) -> str | None:
    for tail in sorted(SECTION_HEADS, key=len, reverse=True):
        if heading.endswith(tail):
            return SECTION_HEADS[tail]
    return None


def strip_frac(s: str) -> str:
    # \frac{a}{b} with plain contents -> (a)/(b)
    pat = re.compile(r"\\frac\{([^{}]*)\}\{([^{}]*)\}")
    while True:
        new = pat.sub(r"((\1)/(\2))", s)
        if new == s:
            return s
        s = new


def rhs_basis(s: str, family: str) -> str:
    for l, sub in ((0, "2k"), (1, "2k-2"), (2, "2k-4")):
        if family == "bernoulli":
            s = s.replace(r"\frac{\beta_{%s}}{(%s)!}" % (sub, sub), f"*BB{l}")
        elif l == 0:
            s = s.replace("t(2k)", "*BB0")
        else:
            s = s.replace(r"\zeta(%d)t(%s)" % (2 * l, sub), f"*BB{l}")
    return s


def clean(s: str) -> str:
    for tok in (r"\qquad", r"\quad", "&", r"\\"):
        s = s.replace(tok, "")
    return s.strip().rstrip(",.").strip()


def weight_expr(lhs: str, n: int) -> str:
    lhs = lhs.replace(r"\sum\nolimits^{(%d)}" % n, "").strip()
    # drop the summand
    lhs = re.sub(r"\\frac\{\\beta_\{2k_1\}.*$", "", lhs)
    lhs = re.sub(r"t\^\{\\star\}\(2k_1.*$", "", lhs)
    lhs = re.sub(r"t\(2k_1.*$", "", lhs).replace(" ", "")
    pair = re.match(r"\\sum\\limits_\{1\\leqslant ?i<j\\leqslant ?(\d)\}(.*)$", lhs)
    if pair:
        body = pair.group(2)
        terms = []
        for i, j in itertools.combinations(range(1, n + 1), 2):
            t = body.replace("k_i", f"k{i}").replace("k_j", f"k{j}")
            terms.append(f"({t})")
        lhs = "+".join(terms)
    if not lhs:
        return "1"
    lhs = re.sub(r"k_(\d)", r"k\1", lhs)
    # k1^2k2 -> k1^2*k2 ; k1k2 -> k1*k2
    lhs = re.sub(r"(k\d(?:\^\d)?)(?=k\d)", r"\1*", lhs)
    return lhs


def parse_block(lines: list[str]) -> list[str]:
    entries: list[str] = []
    for raw in lines:
        line = raw.strip()
        if line.startswith(r"&\sum"):
            entries.append(line)
        elif line.startswith("&") and entries:
            entries[-1] += " " + line
    return [clean(e) for e in entries]


def transcribe(source: Path) -> list[dict]:
    text = source.read_text()
    start = text.index(r"\section{Some weighted sum formulas")
    body = text[start:]
    section = None
    n = None
    star_block = False
    out = []
    lines = body.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        m = re.match(r"\\subsection\{(.*)\}", line)
        if m and section_of(m.group(1)):
            section = section_of(m.group(1))
        m = re.search(r"If \$n=(\d)\$", line)
        if m:
            n = int(m.group(1))
            star_block = False
        if line == "and":
            star_block = True
        if line.startswith(r"\begin{align*}") and section:
            block = []
            i += 1
            while not lines[i].strip().startswith(r"\end{align*}"):
                block.append(lines[i])
                i += 1
            for entry in parse_block(block):
                out.append(make_entry(section, n, star_block, entry))
        i += 1
    return out


def make_entry(section: str, n: int, star_block: bool, entry: str) -> dict:
    lhs, rhs = entry.split("=", 1)
    notes = []
    if section == "A1":
        family = "bernoulli"
    elif section == "A2":
        family = "t-product"
    else:
        family = "mtv-star" if star_block else "mtv"
        printed_star = r"t^{\star}" in lhs
        if printed_star != star_block:
            notes.append("left side printed without the star marker; listed among the star identities")
    f_src = weight_expr(lhs, n)
    f = parse_poly(f_src, n)
    expr_src = rhs_basis(rhs, family)
    expr_src = strip_frac(expr_src).replace("{", "(").replace("}", ")")
    if expr_src.startswith("*"):
        expr_src = expr_src[1:]
    expr_src = expr_src.replace("+*", "+").replace("-*", "-").replace("(*", "(")
    syms = {f"BB{l}": sympy.Symbol(f"BB{l}") for l in range(3)}
    syms["k"] = K
    expr = sympy.expand(parse_expr(expr_src, local_dict=syms, transformations=TRANSFORMS))
    terms = []
    for l in range(3):
        c = sympy.Poly(expr.coeff(syms[f"BB{l}"]), K)
        if c.is_zero:
            continue
        coeffs = [str(sympy.Rational(v)) for v in reversed(c.all_coeffs())]
        terms.append({"l": l, "coeff": coeffs})
    rest = sympy.expand(expr - sum(expr.coeff(syms[f"BB{l}"]) * syms[f"BB{l}"] for l in range(3)))
    if rest != 0:
        raise ValueError(f"unrecognised remainder {rest} in {entry}")
    return {
        "section": section,
        "family": family,
        "n": n,
        "f": f.to_text(),
        "rhs": expr_src.replace("*BB0", " * B0").replace("*BB1", " * B1").replace("*BB2", " * B2"),
        "terms": terms,
        "notes": notes,
    }


def main(argv: list[str]) -> int:
    if not argv:
        print(__doc__)
        return 2
    src = Path(argv[0])
    dst = Path(argv[1]) if len(argv) > 1 else Path(__file__).resolve().parents[1] / "src/teven/data/appendix.json"
    entries = transcribe(src)
    dst.write_text(json.dumps({"version": 1, "entries": entries}, indent=1) + "\n")
    counts: dict[tuple[str, str, int], int] = {}
    for e in entries:
        key = (e["section"], e["family"], e["n"])
        counts[key] = counts.get(key, 0) + 1
    for key in sorted(counts):
        print(*key, counts[key])
    print(f"{len(entries)} entries -> {dst}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv[1:]))
