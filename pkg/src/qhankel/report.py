from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one identity check. A mismatch is data, not an exception."""

    name: str
    params: dict = field(default_factory=dict)
    passed: bool = True
    detail: str = ""

    def line(self) -> str:
        args = " ".join(f"{k}={v}" for k, v in self.params.items())
        status = "PASS" if self.passed else "FAIL"
        tail = f"  {self.detail}" if self.detail and not self.passed else ""
        return f"{status} {self.name} {args}{tail}"

    def to_json(self) -> dict:
        return {"check": self.name, **self.params, "passed": self.passed, "detail": self.detail}


def combine(name: str, params: dict, parts: list[tuple[str, bool]]) -> CheckReport:
    """Fold named sub-results into one report listing the failing parts."""
    failed = [label for label, ok in parts if not ok]
    return CheckReport(name, params, not failed, ", ".join(failed) and "failed: " + ", ".join(failed))
