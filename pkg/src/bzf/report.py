"""Machine-readable pass/fail records shared by every check suite."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Optional


@dataclass
class CheckReport:
    name: str
    tested: int
    passed: bool
    counterexample: Optional[dict] = None
    skipped: bool = False
    note: str = ""

    def __post_init__(self):
        if self.passed != (self.counterexample is None):
            raise ValueError("a report passes exactly when it carries no counterexample")

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "name": self.name,
            "tested": self.tested,
            "passed": self.passed,
            "counterexample": self.counterexample,
        }
        if self.skipped:
            out["skipped"] = True
        if self.note:
            out["note"] = self.note
        return out

    def to_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)
