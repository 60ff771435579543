"""Line-oriented check reports: ``check=<name> status=<pass|fail> key=value ...``."""

from __future__ import annotations

from dataclasses import dataclass, field


def _fmt(value) -> str:
    text = str(value)
    return text.replace(" ", "_") if text else '""'


@dataclass
class Check:
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self, with_time: bool = False) -> str:
        parts = [f"check={self.name}", f"status={'pass' if self.passed else 'fail'}"]
        parts += [f"{k}={_fmt(v)}" for k, v in self.measured.items()]
        if with_time:
            parts.append(f"seconds={self.seconds:.3f}")
        return " ".join(parts)


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, seconds: float = 0.0, **measured) -> Check:
        c = Check(name, bool(passed), dict(measured), seconds)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.measured, c.seconds))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def format(self, with_time: bool = False) -> str:
        return "\n".join(c.line(with_time) for c in self.checks)
