"""Check results and report envelopes shared by every verifier."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass
class CheckResult:
    """Outcome of one named law, with the first witness in canonical order."""

    name: str
    passed: bool
    failures: int = 0
    witness: object = None
    detail: str = ""
    skipped: bool = False

    def to_json(self):
        out = {"name": self.name, "passed": self.passed, "failures": self.failures}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        if self.skipped:
            out["skipped"] = True
        return out


@dataclass
class Report:
    """Ordered collection of check results."""

    title: str = ""
    checks: list = field(default_factory=list)

    def add(self, check):
        self.checks.append(check)
        return check

    def record(self, name, failures, witness=None, detail=""):
        return self.add(CheckResult(name, failures == 0, failures, witness, detail))

    def record_skip(self, name, detail=""):
        return self.add(CheckResult(name, False, 0, None, detail, skipped=True))

    def extend(self, other):
        self.checks.extend(other.checks)

    def extend_prefixed(self, other, prefix):
        for c in other.checks:
            self.checks.append(
                CheckResult(f"{prefix}.{c.name}", c.passed, c.failures, c.witness,
                            c.detail, c.skipped)
            )

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failed_checks(self):
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __contains__(self, name):
        return any(c.name == name for c in self.checks)

    def to_json(self):
        return {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks]}

    def summary_lines(self):
        lines = []
        for c in self.checks:
            status = "PASS" if c.passed else ("SKIP" if c.skipped else "FAIL")
            extra = "" if c.passed or c.skipped else f"  failures={c.failures} witness={c.witness}"
            lines.append(f"[{status}] {c.name}{extra}")
        return lines


def canonical_json(obj):
    """Byte-stable JSON used for golden files and report outputs."""
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"
