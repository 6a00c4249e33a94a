"""
Check reports.

Every checker returns a Report: the list of nonzero residuals it found, in
canonical order, plus free-form notes (warnings such as a non-invariant
result). A report passes iff it has no residuals.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from pydantic import BaseModel

from multimap import Entry, signature

log = logging.getLogger(__name__)


class Residual(BaseModel):
    """One machine-format record: (check, signature, residual)."""

    check: str
    signature: str
    entry: str
    arity: int
    residual: str


def format_fraction(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def format_signature(entry: Entry) -> str:
    return " | ".join(",".join(t) for t in signature(entry))


@dataclass
class Report:
    check: str
    residuals: list[Residual] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.residuals

    def add_entry(self, entry: Entry, value: Fraction, check: str | None = None) -> None:
        if value == 0:
            return
        self.residuals.append(
            Residual(
                check=check or self.check,
                signature=format_signature(entry),
                entry=str(entry),
                arity=entry.arity,
                residual=format_fraction(Fraction(value)),
            )
        )

    def add_word(self, label: str, word: tuple, value: Fraction, check: str | None = None) -> None:
        if value == 0:
            return
        objects = ",".join([word[0].tgt] + [a.src for a in word]) if word else ""
        self.residuals.append(
            Residual(
                check=check or self.check,
                signature=objects,
                entry=f"{label}: " + " ".join(a.name for a in word),
                arity=len(word),
                residual=format_fraction(Fraction(value)),
            )
        )

    def note(self, message: str) -> None:
        log.warning("[%s] %s", self.check, message)
        self.notes.append(message)

    def extend(self, other: Report) -> Report:
        self.residuals.extend(other.residuals)
        self.notes.extend(other.notes)
        return self

    def sorted(self) -> list[Residual]:
        return sorted(self.residuals, key=lambda r: (r.check, r.arity, r.signature, r.entry))

    def min_arity(self) -> int | None:
        return min((r.arity for r in self.residuals), default=None)

    # -------------------------------------------------------------------------
    # Rendering
    # -------------------------------------------------------------------------

    def render_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{self.check}: {status} ({len(self.residuals)} nonzero residuals)"]
        for r in self.sorted():
            lines.append(f"  [{r.check}] arity {r.arity}  {r.signature}  {r.entry}  = {r.residual}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)

    def render_machine(self) -> str:
        return "\n".join(r.model_dump_json() for r in self.sorted())


def residual_report(check: str, residual) -> Report:
    """Report listing every entry of a MultiElement residual."""
    report = Report(check)
    for entry, value in residual.items():
        report.add_entry(entry, value)
    return report
