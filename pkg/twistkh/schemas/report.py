# ruff: noqa: RUF012
"""Report module.

This module provides the following classes:

- Failure
- VerificationReport
"""

from __future__ import annotations

from twistkh.schemas import BaseModel


class Failure(BaseModel):
    """A data model representing one failed check.

    Attributes:
        source (str): Label of the state or generator the check started from.
        target (str): Label of the state the offending block ends at.
        detail (str): The nonvanishing element or a description.
    """

    source: str
    target: str
    detail: str


class VerificationReport(BaseModel):
    """A data model representing the outcome of a verifier.

    Attributes:
        name (str): What was verified.
        passed (bool): Whether every check passed.
        checked (int): Number of blocks or terms examined.
        failures (list[Failure]): The offending blocks.
    """

    name: str
    passed: bool = True
    checked: int = 0
    failures: list[Failure] = []

    def tick(self: VerificationReport, ok: bool, source: str, target: str, detail: str = "") -> None:
        """Record one check."""
        self.checked += 1
        if not ok:
            self.passed = False
            self.failures = [*self.failures, Failure(source=source, target=target, detail=detail)]

    def merge(self: VerificationReport, other: VerificationReport) -> VerificationReport:
        """Return a report combining this one with another."""
        return VerificationReport(
            name=f"{self.name}; {other.name}",
            passed=self.passed and other.passed,
            checked=self.checked + other.checked,
            failures=[*self.failures, *other.failures],
        )
