"""Machine-readable verification records."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__

PASS, FAIL, INFO = "pass", "fail", "info"


@dataclass
class Check:
    name: str
    status: str
    tag: str = ""
    witness: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != FAIL


@dataclass
class Report:
    """A list of named checks plus free-form tables.

    ``tag`` on a check is a short label for the identity being verified
    (e.g. ``"skein-quotient"``); ``tables`` holds dims, betti numbers and
    study rows.
    """

    title: str = ""
    checks: list = field(default_factory=list)
    tables: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)

    def check(self, name: str, ok: bool, tag: str = "", **witness) -> bool:
        self.checks.append(Check(name, PASS if ok else FAIL, tag, witness))
        return bool(ok)

    def info(self, name: str, tag: str = "", **witness) -> None:
        self.checks.append(Check(name, INFO, tag, witness))

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.status, c.tag, c.witness))
        for k, v in other.tables.items():
            self.tables[prefix + k] = v

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> list:
        return [c for c in self.checks if c.status == FAIL]

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        return {
            "tool": "blobcx",
            "version": __version__,
            "title": self.title,
            "config": self.config,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "tag": c.tag, "status": c.status, "witness": c.witness}
                for c in self.checks
            ],
            "tables": self.tables,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=_jsonable)

    def summary(self) -> str:
        lines = [self.title] if self.title else []
        for c in self.checks:
            lines.append(f"[{c.status.upper():4}] {c.name}")
        return "\n".join(lines)


def _jsonable(x):
    if isinstance(x, Fraction):
        return [x.numerator, x.denominator]
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    return str(x)
