"""Report objects returned by check-style operations.

Checks never raise on a mathematical failure; they return a report carrying
the lexicographically first witness so that output is reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional


@dataclass(frozen=True)
class Violation:
    """A single failed identity: which axiom, on which basis tuple, with what defect."""

    kind: str
    where: tuple
    defect: tuple[Fraction, ...]

    def describe(self) -> str:
        loc = ",".join(str(i + 1) for i in self.where)
        vals = ", ".join(str(c) for c in self.defect)
        return f"{self.kind} fails at ({loc}): defect ({vals})"


@dataclass(frozen=True)
class CheckReport:
    """Verdict of a single check, with the first violation if it failed."""

    ok: bool
    violation: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class EquationReport:
    """Verdict of a check made of several named identities."""

    equations: tuple[tuple[str, CheckReport], ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(rep.ok for _, rep in self.equations)

    def __bool__(self) -> bool:
        return self.ok

    def verdicts(self) -> dict[str, bool]:
        return {name: rep.ok for name, rep in self.equations}

    def __getitem__(self, name: str) -> CheckReport:
        for key, rep in self.equations:
            if key == name:
                return rep
        raise KeyError(name)


def passed() -> CheckReport:
    return CheckReport(True)


def failed(kind: str, where: tuple, defect) -> CheckReport:
    return CheckReport(False, Violation(kind, tuple(where), tuple(defect)))
