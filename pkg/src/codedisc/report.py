"""Pass/fail record for exact identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Check:
    name: str
    params: dict = field(default_factory=dict)
    lhs: Any = None
    rhs: Any = None

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        args = ", ".join(f"{k}={v}" for k, v in self.params.items())
        status = "pass" if self.passed else "FAIL"
        return f"[{status}] {self.name}({args}): {self.lhs} vs {self.rhs}"


@dataclass(frozen=True)
class CheckGroup:
    """Several checks reported together, e.g. the two closed-form sums."""

    name: str
    checks: tuple

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def __bool__(self) -> bool:
        return self.passed

    def __iter__(self):
        return iter(self.checks)

    def __str__(self) -> str:
        return "\n".join(str(c) for c in self.checks)
