"""Pass/fail records for identity checks."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckEntry:
    name: str
    measured: float
    tolerance: float
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        # NaN never passes
        return bool(self.measured <= self.tolerance)

    def with_tolerance(self, tol: float) -> "CheckEntry":
        return CheckEntry(self.name, self.measured, tol, dict(self.meta))

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "measured": float(self.measured),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
            "meta": self.meta,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CheckEntry":
        return cls(d["name"], float(d["measured"]), float(d["tolerance"]), dict(d.get("meta", {})))

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"{flag}  {self.name:<44s} measured={self.measured:.3e}  tol={self.tolerance:.1e}"


@dataclass
class CheckReport:
    entries: list[CheckEntry] = field(default_factory=list)

    def add(self, entry: CheckEntry) -> CheckEntry:
        self.entries.append(entry)
        return entry

    def extend(self, entries) -> None:
        self.entries.extend(entries)

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.passed]

    def sorted(self) -> "CheckReport":
        return CheckReport(sorted(self.entries, key=lambda e: e.name))

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "n_entries": len(self.entries),
            "entries": [e.to_dict() for e in self.entries],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)
