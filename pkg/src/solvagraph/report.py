"""Check results shared by the law suites and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Any = None

    def to_dict(self) -> dict:
        out: dict = {"name": self.name, "status": "PASS" if self.passed else "FAIL"}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class CheckList:
    results: list[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "", witness: Any = None) -> CheckResult:
        r = CheckResult(name, bool(passed), detail, witness)
        self.results.append(r)
        return r

    def vacuous(self, name: str, why: str) -> CheckResult:
        return self.add(name, True, f"vacuous: {why}")

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]
