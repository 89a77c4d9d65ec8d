"""Machine-checkable pass/fail reports."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else x.numerator
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Certificate:
    """Outcome of a check; ``details`` holds per-arity or per-weight data."""

    name: str
    ok: bool
    details: dict = field(default_factory=dict)
    where: object = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"check": self.name, "ok": self.ok, "details": _jsonable(self.details)}
        if self.where is not None:
            out["first_failure"] = _jsonable(self.where)
        return out

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        tail = f" (first failure at {self.where})" if (not self.ok and self.where is not None) else ""
        return f"{status} {self.name}{tail}"
