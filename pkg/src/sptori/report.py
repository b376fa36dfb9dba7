"""Tri-state check reports shared by every verifier."""
from __future__ import annotations

from dataclasses import dataclass, field

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not-applicable"


def _jsonable(x):
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, set, frozenset)):
        return [_jsonable(v) for v in x]
    return str(x)


@dataclass
class Check:
    name: str
    status: str = PASS
    witnesses: list = field(default_factory=list)
    detail: str = ""
    window: int | None = None
    count: int = 0

    @property
    def ok(self):
        return self.status in (PASS, NOT_APPLICABLE)

    def fail(self, witness, detail=None, limit=5):
        self.status = FAIL
        if len(self.witnesses) < limit:
            self.witnesses.append(witness)
        if detail and not self.detail:
            self.detail = detail
        return self

    def label(self):
        if self.status == PASS and self.window is not None:
            return f"pass (window {self.window})"
        return self.status

    def to_dict(self):
        out = {"name": self.name, "status": self.label()}
        if self.witnesses:
            out["witnesses"] = _jsonable(self.witnesses)
        if self.detail:
            out["detail"] = self.detail
        if self.count:
            out["checked"] = self.count
        return out


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, check: Check):
        self.checks.append(check)
        return check

    def extend(self, other: "Report", prefix=""):
        for c in other.checks:
            if prefix:
                c = Check(prefix + c.name, c.status, c.witnesses, c.detail, c.window, c.count)
            self.checks.append(c)
        return self

    def __getitem__(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def get(self, name):
        try:
            return self[name]
        except KeyError:
            return None

    @property
    def status(self):
        sts = {c.status for c in self.checks}
        if FAIL in sts:
            return FAIL
        if INCONCLUSIVE in sts:
            return INCONCLUSIVE
        if sts == {NOT_APPLICABLE}:
            return NOT_APPLICABLE
        return PASS

    @property
    def passed(self):
        return self.status == PASS

    def __bool__(self):
        return self.passed

    def failures(self):
        return [c for c in self.checks if c.status == FAIL]

    def to_dict(self):
        out = {"title": self.title, "status": self.status, "checks": [c.to_dict() for c in self.checks]}
        if self.data:
            out["data"] = _jsonable(self.data)
        return out

    def summary(self):
        lines = [f"{self.title}: {self.status}"]
        for c in self.checks:
            line = f"  {c.name}: {c.label()}"
            if c.witnesses:
                line += f"  witness={c.witnesses[0]!r}"
            lines.append(line)
        return "\n".join(lines)
