"""Registries of the classified algebras (lambda, mu and eta rows).

The rows live in ``data/appendix.json``.  Each row keeps the tuple as
printed, the parameter slots (a rational literal or a free symbol such as
``alpha7``), the symbols required to be nonzero, and notes on rows whose
printed form needed interpretation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from importlib import resources

from .core import format_rational
from .leibniz import FamilyParams, build_family, fingerprint, verify_family_instance
from .parallel import pmap
from .sampling import small_rational, stream

WHICH = ("A", "B", "T2")
DATA_FILE = "appendix.json"


@dataclass(frozen=True)
class AppendixRow:
    which: str
    index: int
    family: str
    params: tuple
    nonzero: tuple
    printed: str
    notes: tuple = ()

    @property
    def free(self) -> tuple:
        """Free symbols in slot order."""
        return tuple(p for p in self.params if not _is_literal(p))

    def instantiate(self, values: dict | None = None) -> FamilyParams:
        values = values or {}
        slots = []
        for p in self.params:
            if _is_literal(p):
                slots.append(Fraction(p))
            else:
                if p not in values:
                    raise ValueError(f"row {self.index} needs a value for {p}")
                v = Fraction(values[p])
                if p in self.nonzero and not v:
                    raise ValueError(f"row {self.index} requires {p} != 0")
                slots.append(v)
        return FamilyParams(self.family, tuple(slots))

    def samples(self, seed: int, count: int = 5) -> list[FamilyParams]:
        """Deterministic instantiations; a row without free symbols has one."""
        if not self.free:
            return [self.instantiate()]
        rng = stream(seed, self.index)
        out = []
        for _ in range(count):
            values = {s: small_rational(rng, nonzero=s in self.nonzero) for s in self.free}
            out.append(self.instantiate(values))
        return out


def _is_literal(slot: str) -> bool:
    try:
        Fraction(slot)
    except ValueError:
        return False
    return True


def data_text() -> str:
    return resources.files("filiform.data").joinpath(DATA_FILE).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _load() -> dict:
    return json.loads(data_text())


def registry(which: str) -> list[AppendixRow]:
    """All rows of registry A (lambda), B (mu) or T2 (eta), 1-based order."""
    if which not in WHICH:
        raise ValueError(f"unknown registry {which!r}; expected one of {', '.join(WHICH)}")
    block = _load()[which]
    return [
        AppendixRow(
            which,
            n,
            block["family"],
            tuple(r["params"]),
            tuple(r["nonzero"]),
            r["printed"],
            tuple(r.get("notes", ())),
        )
        for n, r in enumerate(block["rows"], start=1)
    ]


def duplicates(which: str) -> list[tuple[int, int]]:
    """Pairs of rows with identical parameter templates."""
    seen: dict = {}
    out = []
    for row in registry(which):
        key = (row.params, row.nonzero)
        if key in seen:
            out.append((seen[key], row.index))
        else:
            seen[key] = row.index
    return out


def check_row(row: AppendixRow, seed: int = 0, samples: int = 5) -> dict:
    """Verify every sample of a row; returns one JSON-ready report object."""
    sample_reports = []
    for p in row.samples(seed, samples):
        rep = verify_family_instance(p)
        sample_reports.append({
            "values": [format_rational(v) for v in p.values],
            "leibniz_violations": len(rep.leibniz.violations),
            "ideal_ok": rep.ideal_ok,
            "quotient_ok": rep.quotient_ok,
            "action_ok": rep.action_ok,
            "fingerprint": fingerprint(build_family(p.family, p.values).table).to_json(),
        })
    out = {
        "row": row.index,
        "params": list(row.params),
        "leibniz_violations": sum(s["leibniz_violations"] for s in sample_reports),
        "ideal_ok": all(s["ideal_ok"] for s in sample_reports),
        "quotient_ok": all(s["quotient_ok"] for s in sample_reports),
        "action_ok": all(s["action_ok"] for s in sample_reports),
        "fingerprint": sample_reports[0]["fingerprint"],
        "samples": sample_reports,
    }
    if row.nonzero:
        out["nonzero"] = list(row.nonzero)
    if row.notes:
        out["notes"] = list(row.notes)
    return out


def _check_by_index(which: str, seed: int, samples: int, index: int) -> dict:
    return check_row(registry(which)[index - 1], seed, samples)


def check_registry(which: str, seed: int = 0, samples: int = 5, workers: int = 1) -> list[dict]:
    """Row reports in row order."""
    rows = registry(which)
    return pmap(partial(_check_by_index, which, seed, samples), [r.index for r in rows], workers)


def fingerprint_classes(reports: list[dict]) -> list[list[int]]:
    """Groups of rows (size > 1) whose first-sample fingerprints coincide."""
    groups: dict = {}
    for r in reports:
        key = json.dumps(r["fingerprint"], sort_keys=True)
        groups.setdefault(key, []).append(r["row"])
    return [g for g in groups.values() if len(g) > 1]
