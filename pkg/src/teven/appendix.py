"""The embedded corpus of published depth <= 4 identities, and its regeneration."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable

from .formula import Formula, weighted_formula
from .parser import parse_poly
from .partitions import mtv_formula, mtv_star_formula
from .poly import MultiPoly, UniPoly

SECTIONS = ("A1", "A2", "A3")


@dataclass(frozen=True)
class AppendixEntry:
    section: str
    family: str
    n: int
    weight: MultiPoly
    expected: Formula
    rhs: str  # factored right-hand side as transcribed
    notes: tuple[str, ...] = ()

    @property
    def label(self) -> str:
        return f"{self.section} {self.family} n={self.n} f={self.weight.to_text()}"


@dataclass(frozen=True)
class Comparison:
    entry: AppendixEntry
    derived: Formula

    @property
    def equal(self) -> bool:
        return self.derived == self.entry.expected

    def diff_lines(self) -> list[str]:
        out = []
        exp, got = dict(self.entry.expected.terms), dict(self.derived.terms)
        for l in sorted(set(exp) | set(got)):
            a, b = exp.get(l, UniPoly()), got.get(l, UniPoly())
            if a != b:
                out.append(f"  l={l}: expected {a.to_text('k')} | derived {b.to_text('k')}")
        return out


def _parse_entry(raw: dict) -> AppendixEntry:
    n = int(raw["n"])
    f = parse_poly(raw["f"], n)
    terms = tuple(
        (int(t["l"]), UniPoly([Fraction(c) for c in t["coeff"]])) for t in raw["terms"]
    )
    return AppendixEntry(
        raw["section"],
        raw["family"],
        n,
        f,
        Formula(raw["family"], n, f, terms),
        raw.get("rhs", ""),
        tuple(raw.get("notes", ())),
    )


def load_corpus(section: str = "all") -> list[AppendixEntry]:
    if section != "all" and section not in SECTIONS:
        raise ValueError(f"unknown section {section!r}")
    text = resources.files("teven").joinpath("data/appendix.json").read_text(encoding="utf-8")
    entries = [_parse_entry(e) for e in json.loads(text)["entries"]]
    return [e for e in entries if section == "all" or e.section == section]


def derive(family: str, f: MultiPoly, n: int) -> Formula:
    if family in ("bernoulli", "t-product"):
        return weighted_formula(f, n, family)
    if family == "mtv":
        return mtv_formula(f, n)
    if family == "mtv-star":
        return mtv_star_formula(f, n)
    raise ValueError(f"unknown family {family!r}")


def regenerate(entries: Iterable[AppendixEntry]) -> list[Comparison]:
    return [Comparison(e, derive(e.family, e.weight, e.n)) for e in entries]
