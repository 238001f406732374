"""Structured pass/fail reports shared by all checkers.

A report is a flat list of named check entries.  Checkers append one entry
per check family and record *every* witness of failure, not just the first,
with witnesses listed in lexicographic order so that identical inputs always
produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckEntry:
    name: str
    status: str  # "pass" | "fail" | "error"
    witnesses: tuple[str, ...] = ()
    timing: float | None = None


@dataclass
class Report:
    entries: list[CheckEntry] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    @property
    def status(self) -> str:
        if any(e.status == "error" for e in self.entries):
            return "error"
        return "pass" if self.ok else "fail"

    def add(self, name: str, witnesses: list[str] | tuple[str, ...] = ()) -> None:
        """Record a check: it passes exactly when `witnesses` is empty."""
        ws = tuple(sorted(witnesses))
        self.entries.append(CheckEntry(name, "pass" if not ws else "fail", ws))

    def add_error(self, name: str, message: str) -> None:
        self.entries.append(CheckEntry(name, "error", (message,)))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for e in other.entries:
            self.entries.append(
                CheckEntry(prefix + e.name, e.status, e.witnesses, e.timing)
            )

    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if e.status != "pass"]

    def summary(self) -> str:
        failed = len(self.failures())
        if failed == 0:
            return f"PASS ({len(self.entries)} checks)"
        return f"FAIL ({failed}/{len(self.entries)} checks failed)"
