"""Residual reports shared by all verification routines.

A report is an ordered list of named checks; ordering is deterministic for a
given configuration so that text output is stable and diffable.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckResult:
    name: str
    residual: float
    tolerance: float
    passed: bool
    note: str = ""

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "residual": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class VerificationReport:
    title: str = ""
    checks: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, residual: float, tolerance: float, note: str = "") -> CheckResult:
        result = CheckResult(
            name=name,
            residual=float(residual),
            tolerance=float(tolerance),
            passed=bool(residual <= tolerance),
            note=note,
        )
        self.checks.append(result)
        return result

    def extend(self, other: "VerificationReport") -> None:
        self.checks.extend(other.checks)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def max_residual(self, prefix: str = "") -> float:
        vals = [c.residual for c in self.checks if c.name.startswith(prefix)]
        return max(vals) if vals else 0.0

    def __getitem__(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_text(self) -> str:
        """Fixed-width table: name, residual, tolerance, verdict, note."""
        width = max([len(c.name) for c in self.checks] + [24])
        lines = []
        if self.title:
            lines.append(self.title)
        lines.append(f"{'check':<{width}}  {'residual':>12}  {'tolerance':>10}  verdict")
        for c in self.checks:
            verdict = "pass" if c.passed else "FAIL"
            note = f"  [{c.note}]" if c.note else ""
            lines.append(
                f"{c.name:<{width}}  {c.residual:>12.3e}  {c.tolerance:>10.1e}  {verdict}{note}"
            )
        lines.append(f"overall: {'pass' if self.passed else 'FAIL'}")
        return "\n".join(lines)
