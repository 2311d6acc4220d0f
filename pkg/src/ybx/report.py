"""Verification reports shared by every checker."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of one verification.

    ``identity`` names the equality being checked in words. ``details``
    carries check-specific fields that are merged into the JSON form.
    """

    check: str
    identity: str
    equal: bool
    mismatches: list = field(default_factory=list)
    checked: int = 0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.equal

    def __bool__(self):
        return self.equal

    def to_dict(self) -> dict[str, Any]:
        out = {
            "check": self.check,
            "identity": self.identity,
            "equal": self.equal,
            "checked": self.checked,
            "mismatches": [_jsonable(m) for m in self.mismatches],
        }
        for k, v in self.details.items():
            out[k] = _jsonable(v)
        return out

    def summary(self) -> str:
        status = "PASS" if self.equal else "FAIL"
        extra = f", {len(self.mismatches)} mismatches" if self.mismatches else ""
        return f"[{status}] {self.check}: {self.identity} ({self.checked} cases{extra})"


def merge(check: str, identity: str, reports: list[Report], max_mismatches: int = 20) -> Report:
    """Combine many per-case reports into one sweep report."""
    mismatches = []
    for r in reports:
        if not r.equal:
            mismatches.extend(r.mismatches or [r.details])
    return Report(
        check=check,
        identity=identity,
        equal=all(r.equal for r in reports),
        mismatches=mismatches[:max_mismatches],
        checked=sum(max(r.checked, 1) for r in reports),
    )


def _jsonable(v):
    from fractions import Fraction

    if hasattr(v, "to_json"):
        return v.to_json()
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, dict):
        return {str(k) if not isinstance(k, str) else k: _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v
