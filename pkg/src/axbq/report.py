"""Pass/fail records shared by the suites, the K-theory scenarios and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

__all__ = ["PASS", "FAIL", "SKIP", "CaseResult", "SuiteReport"]

PASS, FAIL, SKIP = "pass", "fail", "skip"


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    status: str
    witness: dict = field(default_factory=dict)

    def record(self) -> dict:
        return {"suite": self.suite, "case": self.case, "status": self.status,
                "witness": self.witness}


@dataclass
class SuiteReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.status != FAIL for c in self.cases)

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if c.status == FAIL]

    def case(self, name: str) -> CaseResult:
        for c in self.cases:
            if c.case == name:
                return c
        raise KeyError(name)

    def __iter__(self) -> Iterator[CaseResult]:
        return iter(self.cases)
