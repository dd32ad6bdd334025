"""Inference rules shared by tree and dag derivations."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence

from .formula import Formula, Imp, render_formula


class Rule(str, Enum):
    ASSUME = "assume"
    IMP_I = "impI"
    IMP_E = "impE"
    REP = "rep"

    def __str__(self) -> str:
        return self.value


class Mode(str, Enum):
    NM = "nm"  # (->I), (->E) only
    NM_PLUS = "nm+"  # plus repetitions (R)_n

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Violation:
    kind: str
    where: Any  # tree address (tuple of child slots) or dag node id
    message: str
    expected: Optional[str] = None
    actual: Optional[str] = None

    def __str__(self) -> str:
        text = f"{self.kind} at {self.where!r}: {self.message}"
        if self.expected is not None or self.actual is not None:
            text += f" (expected {self.expected}, got {self.actual})"
        return text


@dataclass(frozen=True)
class CheckReport:
    violation: Optional[Violation] = None

    @property
    def ok(self) -> bool:
        return self.violation is None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "valid" if self.ok else str(self.violation)


def closes(rule: Rule, conclusion: Formula, leaf_formula: Formula) -> bool:
    """True if a node with this rule and conclusion closes paths from a leaf
    labelled ``leaf_formula``: an introduction concluding ``leaf_formula -> _``.
    Discharge labels play no part."""
    return rule is Rule.IMP_I and isinstance(conclusion, Imp) and conclusion.antecedent == leaf_formula


def _show(f: Optional[Formula]) -> str:
    return "-" if f is None else render_formula(f)


def local_violation(
    where: Any,
    rule: Rule,
    conclusion: Formula,
    antecedent: Optional[Formula],
    premises: Sequence[Formula],
    mode: Mode,
) -> Optional[Violation]:
    """First local rule violation of one inference, or None."""
    if rule is Rule.ASSUME:
        if premises:
            return Violation("arity", where, "assumption has premises", "0", str(len(premises)))
        return None

    if rule is Rule.IMP_I:
        if len(premises) != 1:
            return Violation("arity", where, "(->I) takes one premise", "1", str(len(premises)))
        if antecedent is None:
            return Violation("missing antecedent", where, "(->I) without antecedent")
        expected = Imp(antecedent, premises[0])
        if conclusion != expected:
            return Violation("conclusion mismatch", where, "(->I) conclusion must be antecedent -> premise",
                             _show(expected), _show(conclusion))
        return None

    if rule is Rule.IMP_E:
        if len(premises) != 2:
            return Violation("arity", where, "(->E) takes [minor, major]", "2", str(len(premises)))
        minor, major = premises
        expected = Imp(minor, conclusion)
        if major != expected:
            return Violation("conclusion mismatch", where, "(->E) major premise must be minor -> conclusion",
                             _show(expected), _show(major))
        return None

    if rule is Rule.REP:
        if mode is not Mode.NM_PLUS:
            return Violation("repetition outside nm+", where, "repetition rule used in nm mode")
        if not premises:
            return Violation("arity", where, "repetition needs n >= 1 premises", ">=1", "0")
        for i, p in enumerate(premises):
            if p != conclusion:
                return Violation("conclusion mismatch", where, f"repetition premise {i} differs from conclusion",
                                 _show(conclusion), _show(p))
        return None

    return Violation("unknown rule", where, f"unknown rule {rule!r}")
