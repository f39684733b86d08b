from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Violation:
    check: str
    witness: tuple
    defect: Any = None

    def describe(self) -> str:
        text = f"{self.check} at {_fmt(self.witness)}"
        if self.defect is not None:
            text += f": {_fmt(self.defect)}"
        return text


@dataclass
class VerificationReport:
    """Violations found by a checker; empty means every check passed.

    ``stats`` carries auxiliary numbers (ranks, counts) for reporting only.
    """

    violations: list[Violation] = field(default_factory=list)
    stats: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, check: str, witness: tuple, defect: Any = None) -> None:
        self.violations.append(Violation(check, tuple(witness), defect))

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.violations.extend(other.violations)
        self.stats.update(other.stats)
        return self

    def checks(self) -> set[str]:
        return {v.check for v in self.violations}

    def witnesses(self, check: str) -> list[tuple]:
        return [v.witness for v in self.violations if v.check == check]

    def render(self, title: str = "report") -> str:
        lines = [f"{title}: {'PASS' if self.ok else 'FAIL'} ({len(self.violations)} violations)"]
        for key in sorted(self.stats):
            lines.append(f"  {key} = {_fmt(self.stats[key])}")
        for v in self.violations:
            lines.append("  - " + v.describe())
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "stats": {k: _jsonable(v) for k, v in sorted(self.stats.items())},
            "violations": [
                {"check": v.check, "witness": _jsonable(v.witness), "defect": _jsonable(v.defect)}
                for v in self.violations
            ],
        }

    def __str__(self) -> str:
        return self.render()


def _fmt(value: Any) -> str:
    if isinstance(value, tuple):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{_fmt(k)}: {_fmt(v)}" for k, v in value.items()) + "}"
    return str(value)


def _jsonable(value: Any):
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {_fmt(k): _jsonable(v) for k, v in value.items()}
    if value is None or isinstance(value, (bool, int, str)):
        return value
    return str(value)


def dumps(report: VerificationReport) -> str:
    return json.dumps(report.to_json(), sort_keys=True, indent=2)
