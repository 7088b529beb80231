"""Verdict records and reports for the verification suites."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = "pass"
FAIL = "fail"
EXPECTED_FAILURE = "expected-failure"


@dataclass
class CaseResult:
    """One check: what was expected, what happened, and the evidence."""

    name: str
    passed: bool
    expect: str = PASS
    window: Optional[List[int]] = None
    dims: Dict[str, Any] = field(default_factory=dict)
    witness: Optional[dict] = None
    cutoff: Optional[dict] = None
    detail: str = ""
    seconds: float = 0.0

    @property
    def verdict(self) -> str:
        return PASS if self.passed else FAIL

    @property
    def ok(self) -> bool:
        """A pass case must pass; an expected-failure case must fail."""
        return self.passed if self.expect == PASS else not self.passed

    def to_json(self, timing: bool = False) -> dict:
        out = {"name": self.name, "expect": self.expect, "verdict": self.verdict, "ok": self.ok}
        if self.window is not None:
            out["window"] = list(self.window)
        if self.dims:
            out["dims"] = _jsonable(self.dims)
        if self.witness is not None:
            out["witness"] = _jsonable(self.witness)
        if self.cutoff is not None:
            out["cutoff"] = _jsonable(self.cutoff)
        if self.detail:
            out["detail"] = self.detail
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out


@dataclass
class VerificationReport:
    suite: str
    cases: List[CaseResult] = field(default_factory=list)
    seed: int = 0
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.cases)

    def add(self, case: CaseResult) -> CaseResult:
        self.cases.append(case)
        return case

    def extend(self, other: "VerificationReport", prefix: str = ""):
        for c in other.cases:
            if prefix:
                c.name = "%s/%s" % (prefix, c.name)
            self.cases.append(c)
        self.notes.extend(other.notes)

    def failures(self) -> List[CaseResult]:
        return [c for c in self.cases if not c.ok]

    def to_json(self, timing: bool = False) -> dict:
        return {"suite": self.suite, "seed": self.seed, "ok": self.ok,
                "cases": [c.to_json(timing) for c in self.cases], "notes": list(self.notes)}

    def dumps(self, timing: bool = False) -> str:
        """Canonical JSON; timings are left out by default so reports are reproducible."""
        return json.dumps(self.to_json(timing), sort_keys=True, indent=2, ensure_ascii=False)

    def table(self) -> str:
        rows = [("case", "expect", "verdict", "ok", "s")]
        for c in self.cases:
            rows.append((c.name, c.expect, c.verdict, "yes" if c.ok else "NO", "%.2f" % c.seconds))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = ["  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip() for r in rows]
        lines.insert(1, "  ".join("-" * w for w in widths))
        lines.append("%s: %d/%d ok" % (self.suite, sum(c.ok for c in self.cases), len(self.cases)))
        for n in self.notes:
            lines.append("note: " + n)
        return "\n".join(lines)


def _jsonable(x):
    from fractions import Fraction
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in sorted(x.items(), key=lambda kv: _order(kv[0]))}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, Fraction):
        return str(x)
    return x


def _order(k):
    if isinstance(k, int):
        return (0, k, "")
    return (1, 0, str(k))
