"""Exceptions raised by the grammar algebra.

Outcomes that are results (a rejected certificate, a failed validation, an
unclassifiable form) are returned as data. Only contract violations and
exhausted budgets are raised.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.grammar import ValidationReport


class GrammarAlgebraError(Exception):
    """Base class for every error raised by this package."""


class PositionOutOfRange(GrammarAlgebraError):
    """A step addresses a position outside the current sentential form."""

    def __init__(self, pos: int, length: int):
        self.pos = pos
        self.length = length
        super().__init__(f"position {pos} is out of range for a form of length {length}")


class SymbolMismatch(GrammarAlgebraError):
    """The symbol at the addressed position is not the rule's left-hand side."""

    def __init__(self, pos: int, found: str, expected: str):
        self.pos = pos
        self.found = found
        self.expected = expected
        super().__init__(f"symbol at position {pos} is {found}, rule expects {expected}")


class UnknownRule(GrammarAlgebraError):
    """A step refers to a rule id the grammar does not have."""

    def __init__(self, rule_id: int, rule_count: int):
        self.rule_id = rule_id
        self.rule_count = rule_count
        super().__init__(f"rule {rule_id} does not exist (grammar has {rule_count} rules)")


class FormMismatch(GrammarAlgebraError):
    """Two certificates cannot be chained: the first does not end where the second starts."""


class InvalidInput(GrammarAlgebraError):
    """An input violates an operation's precondition (rejected certificate, invalid grammar...)."""


class BudgetExceeded(GrammarAlgebraError):
    """The search explored more forms than the configured cap allows.

    Distinct from an absent result: absent means the bounds were searched
    exhaustively and nothing was found.
    """

    def __init__(self, explored: int, cap: int):
        self.explored = explored
        self.cap = cap
        super().__init__(f"explored {explored} forms, cap is {cap}")


class GrammarSyntaxError(GrammarAlgebraError):
    """A grammar or certificate text is malformed."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class GrammarValidationError(GrammarAlgebraError):
    """A grammar is syntactically well formed but breaks a grammar invariant."""

    def __init__(self, report: "ValidationReport"):
        self.report = report
        super().__init__("; ".join(report.violations))
