"""Result records returned by property checks and CLI commands."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class PropertyReport:
    """Outcome of a single property check.

    `witness` is present exactly when the property fails and re-checking it
    against the inputs reproduces the failure.  `detail` may carry extra
    non-counterexample information (found witnesses of success, skip reasons).
    """

    name: str
    holds: bool
    witness: tuple | None = None
    detail: dict | None = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("witness only allowed on failing reports")
        if not self.holds and self.witness is None:
            raise ValueError("failing report requires a witness")

    def __bool__(self):
        return self.holds


def passed(name: str, detail: dict | None = None) -> PropertyReport:
    return PropertyReport(name, True, None, detail)


def failed(name: str, witness: tuple, detail: dict | None = None) -> PropertyReport:
    return PropertyReport(name, False, tuple(witness), detail)


@dataclass
class CheckResult:
    """One line of a run report: a named check with its outcome."""

    name: str
    ok: bool
    witness: str | None = None
    duration: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.ok else "FAIL"
        extra = f"  [{self.witness}]" if (not self.ok and self.witness) else ""
        return f"{mark}  {self.name} ({self.duration:.2f}s){extra}"


@dataclass
class RunReport:
    """Aggregated result of a CLI command."""

    command: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def add(self, name, ok, witness=None, duration=0.0):
        self.checks.append(CheckResult(name, bool(ok), witness, duration))

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "checks": [
                {
                    "name": c.name,
                    "ok": c.ok,
                    "witness": c.witness,
                    "duration": round(c.duration, 4),
                }
                for c in self.checks
            ],
            "exit_status": self.exit_status,
        }

    def render(self) -> str:
        lines = [c.line() for c in self.checks]
        lines.append(f"{'OK' if self.ok else 'FAILED'}  {self.command}")
        return "\n".join(lines)
