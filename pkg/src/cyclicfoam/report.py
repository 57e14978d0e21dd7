from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Failure:
    check: str
    detail: str


@dataclass
class Report:
    """Outcome of a verification run: every check name tried, and the failures."""

    checks: list[str] = field(default_factory=list)
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(check)
        if not passed:
            self.failures.append(Failure(check, detail))
        return passed

    def merge(self, other: "Report", prefix: str = "") -> "Report":
        self.checks.extend(prefix + c for c in other.checks)
        self.failures.extend(Failure(prefix + f.check, f.detail) for f in other.failures)
        return self

    def failed(self, check_prefix: str) -> bool:
        return any(f.check.startswith(check_prefix) for f in self.failures)

    def summary(self) -> str:
        head = f"{len(self.checks)} checks, {len(self.failures)} failures"
        return "\n".join([head] + [f"FAIL {f.check}: {f.detail}" for f in self.failures])
