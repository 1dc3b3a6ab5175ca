"""On-disk formula cache: one JSON file per (family, n, canonical weight)."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass
from pathlib import Path

from .formula import Formula
from .poly import MultiPoly

ENV_VAR = "TEVEN_CACHE_DIR"
DEFAULT_DIR = Path.home() / ".cache" / "teven"


class CacheError(OSError):
    pass


def weight_key(family: str, n: int, f: MultiPoly) -> str:
    canon = json.dumps(f.to_json(), sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(f"{family}|{n}|{canon}".encode()).hexdigest()[:20]
    return f"{family}-n{n}-{digest}"


def dumps(formula: Formula) -> str:
    return json.dumps(formula.to_json(), sort_keys=True, indent=1) + "\n"


@dataclass(frozen=True)
class CacheEntry:
    path: Path
    formula: Formula


class FormulaCache:
    def __init__(self, root: str | os.PathLike) -> None:
        self.root = Path(root)

    @classmethod
    def from_env(cls, override: str | None = None) -> "FormulaCache":
        return cls(override or os.environ.get(ENV_VAR) or DEFAULT_DIR)

    def _ensure(self) -> None:
        try:
            self.root.mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise CacheError(f"cannot create cache directory {self.root}: {exc}") from exc
        if not os.access(self.root, os.W_OK):
            raise CacheError(f"cache directory {self.root} is not writable")

    def path_for(self, family: str, n: int, f: MultiPoly) -> Path:
        return self.root / f"{weight_key(family, n, f)}.json"

    def get(self, family: str, n: int, f: MultiPoly) -> Formula | None:
        p = self.path_for(family, n, f)
        try:
            data = json.loads(p.read_text(encoding="utf-8"))
            formula = Formula.from_json(data)
        except (OSError, ValueError, KeyError, TypeError):
            return None
        if formula.family != family or formula.n != n or formula.weight != f:
            return None
        return formula

    def put(self, formula: Formula) -> Path:
        self._ensure()
        p = self.path_for(formula.family, formula.n, formula.weight)
        try:
            # write-then-rename so readers never see a partial file
            fd, tmp = tempfile.mkstemp(dir=self.root, suffix=".tmp")
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(dumps(formula))
            os.replace(tmp, p)
        except OSError as exc:
            raise CacheError(f"cannot write {p}: {exc}") from exc
        return p

    def entries(self) -> list[CacheEntry]:
        if not self.root.is_dir():
            return []
        out = []
        for p in sorted(self.root.glob("*.json")):
            try:
                out.append(CacheEntry(p, Formula.from_json(json.loads(p.read_text(encoding="utf-8")))))
            except (OSError, ValueError, KeyError, TypeError):
                continue
        return out

    def purge(self) -> int:
        if not self.root.is_dir():
            return 0
        count = 0
        try:
            for p in self.root.glob("*.json"):
                p.unlink()
                count += 1
        except OSError as exc:
            raise CacheError(f"cannot purge {self.root}: {exc}") from exc
        return count
