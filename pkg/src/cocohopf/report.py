"""Task reports: a status, a JSON-ready payload and optional timing."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

PASS = "pass"
FAIL = "fail"
ERROR = "error"


def jsonable(obj: Any) -> Any:
    """Convert Fractions, tuples and nested containers into JSON-ready values."""
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if isinstance(obj, float):
        return obj
    return str(obj)


@dataclass
class Report:
    task: str
    status: str
    payload: dict = field(default_factory=dict)
    timing: float | None = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self, include_timing: bool = False) -> dict:
        d = {"task": self.task, "status": self.status, "payload": jsonable(self.payload)}
        if include_timing and self.timing is not None:
            d["timing"] = self.timing
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        return cls(d["task"], d["status"], d.get("payload", {}), d.get("timing"))

    def to_json(self, include_timing: bool = False) -> str:
        return json.dumps(self.to_dict(include_timing), sort_keys=True, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"[{self.status.upper()}] {self.task}"]
        for k in sorted(self.payload):
            v = jsonable(self.payload[k])
            if isinstance(v, (dict, list)):
                v = json.dumps(v, sort_keys=True, ensure_ascii=False)
            lines.append(f"  {k}: {v}")
        if self.timing is not None:
            lines.append(f"  time: {self.timing:.3f}s")
        return "\n".join(lines)


class CheckLog:
    """Collects named checks, keeping the first witness of each failure."""

    def __init__(self, names=()):
        self.results: dict[str, dict] = {n: {"status": PASS} for n in names}
        self.order: list[str] = list(names)

    def ok(self, name: str) -> bool:
        return self.results.setdefault(name, {"status": PASS})["status"] == PASS

    def fail(self, name: str, witness: Any, detail: str = "") -> None:
        if name not in self.results:
            self.order.append(name)
        entry = self.results.setdefault(name, {"status": PASS})
        if entry["status"] == PASS:
            entry["status"] = FAIL
            entry["witness"] = witness
            if detail:
                entry["detail"] = detail

    def check(self, name: str, cond: bool, witness: Any, detail: str = "") -> bool:
        if name not in self.results:
            self.order.append(name)
            self.results[name] = {"status": PASS}
        if not cond:
            self.fail(name, witness, detail)
        return cond

    @property
    def passed(self) -> bool:
        return all(r["status"] == PASS for r in self.results.values())

    def first_failure(self) -> str | None:
        return next((n for n in self.order if self.results[n]["status"] != PASS), None)

    def report(self, task: str, **extra) -> Report:
        payload = {"checks": {n: self.results[n] for n in self.order}}
        first = self.first_failure()
        if first is not None:
            payload["first_failure"] = {"check": first, **self.results[first]}
        payload.update(extra)
        return Report(task, PASS if self.passed else FAIL, payload)
