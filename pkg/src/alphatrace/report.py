"""Law/verification reports shared by the kernel, the instance modules and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

MAX_KEPT_FAILURES = 25


def _force(value: Any) -> Any:
    return value() if callable(value) else value


@dataclass
class Failure:
    inputs: Any
    expected: Any
    actual: Any

    def to_dict(self) -> dict:
        return {"inputs": str(self.inputs), "expected": str(self.expected), "actual": str(self.actual)}


@dataclass
class LawReport:
    """Outcome of one verification suite.

    ``passed`` is derived from ``failures`` so the two can never disagree.
    Only the first ``MAX_KEPT_FAILURES`` counterexamples are stored; ``failed``
    keeps the full count.
    """

    suite: str
    seed: int | None = None
    cases: int = 0
    failed: int = 0
    failures: list[Failure] = field(default_factory=list)
    truncated: bool = False

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, inputs: Any = None, expected: Any = None, actual: Any = None) -> bool:
        """Count one case; ``expected``/``actual`` may be thunks, forced only on failure."""
        self.cases += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_KEPT_FAILURES:
                self.failures.append(Failure(inputs, _force(expected), _force(actual)))
        return ok

    def absorb(self, other: "LawReport") -> None:
        self.cases += other.cases
        self.failed += other.failed
        room = MAX_KEPT_FAILURES - len(self.failures)
        self.failures.extend(other.failures[:max(room, 0)])
        self.truncated = self.truncated or other.truncated

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        seed = "-" if self.seed is None else str(self.seed)
        line = f"{status} {self.suite} cases={self.cases} failures={self.failed} seed={seed}"
        if self.truncated:
            line += " (enumeration truncated)"
        return line

    def render(self) -> str:
        lines = [self.summary()]
        for fail in self.failures:
            lines.append(f"  counterexample: inputs={fail.inputs}")
            lines.append(f"    expected: {fail.expected}")
            lines.append(f"    actual:   {fail.actual}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "cases": self.cases,
            "failed": self.failed,
            "passed": self.passed,
            "truncated": self.truncated,
            "failures": [f.to_dict() for f in self.failures],
        }
