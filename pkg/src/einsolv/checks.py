"""Named pass/fail results shared by the verifiers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str = ""

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "witness": self.witness}


class Ledger(tuple):
    """Immutable sequence of :class:`Check` with lookup by name."""

    def __new__(cls, checks: Iterable[Check] = ()):
        return super().__new__(cls, tuple(checks))

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self)

    def __getitem__(self, key):
        if isinstance(key, str):
            for c in self:
                if c.name == key:
                    return c
            raise KeyError(key)
        return super().__getitem__(key)

    def failures(self) -> list[Check]:
        return [c for c in self if not c.passed]

    def names(self) -> list[str]:
        return [c.name for c in self]
