"""Check records and their jsonl / csv serialization."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Any, Iterable, Mapping

from ffspectra.cycint import CycInt
from ffspectra.spectrum import Spectrum

STATUSES = ("pass", "fail", "not-covered", "observation")


def plain(value: Any) -> Any:
    """Convert to JSON-ready data with exact integers."""
    if isinstance(value, Spectrum):
        return [[k, v] for k, v in value.pairs()]
    if isinstance(value, CycInt):
        return {"cyclotomic": list(value.coeffs)}
    if isinstance(value, Mapping):
        return [[plain(k), plain(v)] for k, v in value.items()]
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [plain(v) for v in items]
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value


@dataclass(frozen=True)
class Record:
    check: str
    anchor: str
    expected: Any
    observed: Any
    status: str

    def __post_init__(self) -> None:
        if self.status not in STATUSES:
            raise ValueError(f"bad status {self.status!r}")

    def row(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "expected": plain(self.expected),
            "observed": plain(self.observed),
            "status": self.status,
        }


def compare(check: str, anchor: str, expected: Any, observed: Any) -> Record:
    return Record(check, anchor, expected, observed, "pass" if expected == observed else "fail")


def holds(check: str, anchor: str, ok: bool, observed: Any = True) -> Record:
    return Record(check, anchor, True, observed, "pass" if ok else "fail")


def dumps(rows: Iterable[Mapping[str, Any]], fmt: str) -> str:
    rows = [dict(r) for r in rows]
    if fmt == "jsonl":
        return "".join(json.dumps({k: plain(v) for k, v in r.items()}, separators=(",", ":")) + "\n" for r in rows)
    if fmt == "csv":
        fields: list[str] = []
        for r in rows:
            fields += [k for k in r if k not in fields]
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow(
                {
                    k: v if isinstance(v, (int, str)) else json.dumps(plain(v), separators=(",", ":"))
                    for k, v in r.items()
                }
            )
        return buf.getvalue()
    raise ValueError(f"unknown format {fmt!r}")
