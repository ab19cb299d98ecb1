"""Named check results with a verdict derived from the margin."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
EQUALITY = "equality"

RELATIONS = (">=", ">", "<=", "<", "==", "info")


def judge(margin: float, relation: str, tol: float) -> str:
    """Verdict for ``lhs - rhs = margin`` under ``lhs <relation> rhs``."""
    if relation == "info":
        return PASS
    if relation == ">=":
        if margin > tol:
            return PASS
        return EQUALITY if margin >= -tol else FAIL
    if relation == "<=":
        if margin < -tol:
            return PASS
        return EQUALITY if margin <= tol else FAIL
    if relation == ">":
        return PASS if margin > tol else FAIL
    if relation == "<":
        return PASS if margin < -tol else FAIL
    if relation == "==":
        return EQUALITY if abs(margin) <= tol else FAIL
    raise ValueError(f"unknown relation {relation!r}")


@dataclass(frozen=True)
class CheckReport:
    name: str
    lhs: float
    rhs: float
    relation: str = ">="
    tol: float = 1e-9
    notes: str = ""
    data: dict[str, Any] = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return float(self.lhs) - float(self.rhs)

    @property
    def verdict(self) -> str:
        return judge(self.margin, self.relation, self.tol)

    @property
    def ok(self) -> bool:
        return self.verdict != FAIL

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "margin": self.margin,
            "relation": self.relation,
            "tol": float(self.tol),
            "verdict": self.verdict,
            "notes": self.notes,
            "data": self.data,
        }
