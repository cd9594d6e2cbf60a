"""Structured pass/fail reports used by every validator."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class Check:
    name: str
    passed: bool | None  # None means skipped
    witness: tuple | None = None
    detail: str = ""

    @property
    def status(self):
        if self.passed is None:
            return "skipped"
        return "pass" if self.passed else "FAIL"

    def to_dict(self):
        d = {"name": self.name, "status": self.status}
        if self.witness is not None:
            d["witness"] = repr(self.witness)
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class ValidationReport:
    title: str
    checks: list = field(default_factory=list)

    def add(self, name, passed, witness=None, detail=""):
        self.checks.append(Check(name, passed, witness, detail))
        return passed

    def extend(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))

    @property
    def ok(self):
        return all(c.passed is not False for c in self.checks)

    def failures(self):
        return [c for c in self.checks if c.passed is False]

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        return {"title": self.title, "ok": self.ok, "checks": [c.to_dict() for c in self.checks]}

    def __str__(self):
        lines = [f"{self.title}: {'ok' if self.ok else 'FAILED'}"]
        for c in self.checks:
            w = f"  witness={c.witness!r}" if c.witness is not None else ""
            d = f"  ({c.detail})" if c.detail else ""
            lines.append(f"  [{c.status:>7}] {c.name}{w}{d}")
        return "\n".join(lines)


class Recorder:
    """Collects the first counterexample per axiom while looping."""

    def __init__(self, report):
        self.report = report
        self.first = {}
        self.order = []

    def check(self, name, ok, witness):
        if name not in self.first:
            self.first[name] = None
            self.order.append(name)
        if not ok and self.first[name] is None:
            self.first[name] = witness

    def flush(self):
        for name in self.order:
            w = self.first[name]
            self.report.add(name, w is None, w)
        return self.report
