"""Derivation certificates and the checker that replays them.

A certificate is a start form plus a list of steps; each step names the
position of the nonterminal it rewrites and the rule it applies. An empty step
list derives the start form from itself.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from src.errors import FormMismatch, GrammarAlgebraError, InvalidInput, PositionOutOfRange, SymbolMismatch, UnknownRule
from src.grammar import Grammar
from src.symbols import Nt, SententialForm, serialize_form, serialize_nt


@dataclass(frozen=True, slots=True)
class Step:
    pos: int
    rule_id: int


@dataclass(frozen=True, slots=True)
class Derivation:
    start: SententialForm
    steps: tuple[Step, ...] = ()

    @property
    def step_count(self) -> int:
        return len(self.steps)


@dataclass(frozen=True, slots=True)
class CheckResult:
    accepted: bool
    final: SententialForm | None = None
    failed_step: int | None = None
    reason: str | None = None


def apply_rule_at(grammar: Grammar, form: SententialForm, pos: int, rule_id: int) -> SententialForm:
    """Replace the nonterminal at ``pos`` by the right-hand side of rule ``rule_id``."""
    if not 0 <= rule_id < len(grammar.rules):
        raise UnknownRule(rule_id, len(grammar.rules))
    if not 0 <= pos < len(form):
        raise PositionOutOfRange(pos, len(form))
    rule = grammar.rules[rule_id]
    symbol = form[pos]
    if not isinstance(symbol, Nt) or symbol.name != rule.lhs:
        raise SymbolMismatch(pos, str(symbol), serialize_nt(rule.lhs))
    return form[:pos] + rule.rhs + form[pos + 1:]


def replay(grammar: Grammar, derivation: Derivation) -> Iterator[SententialForm]:
    """Yield the start form and every intermediate form. Raises on the first bad step."""
    form = derivation.start
    yield form
    for step in derivation.steps:
        form = apply_rule_at(grammar, form, step.pos, step.rule_id)
        yield form


def check_derivation(grammar: Grammar, derivation: Derivation) -> CheckResult:
    """Accept iff every step applies; rejection is a result, not an exception."""
    form = derivation.start
    for index, step in enumerate(derivation.steps):
        try:
            form = apply_rule_at(grammar, form, step.pos, step.rule_id)
        except GrammarAlgebraError as error:
            logging.debug(f"Certificate rejected at step {index}: {error}")
            return CheckResult(accepted=False, failed_step=index, reason=str(error))
    return CheckResult(accepted=True, final=form)


def final_form(grammar: Grammar, derivation: Derivation) -> SententialForm:
    """The form a certificate ends in; InvalidInput if the certificate is rejected."""
    result = check_derivation(grammar, derivation)
    if not result.accepted or result.final is None:
        raise InvalidInput(f"certificate rejected at step {result.failed_step}: {result.reason}")
    return result.final


def compose_derivations(grammar: Grammar, first: Derivation, second: Derivation) -> Derivation:
    """Chain two certificates: the first must end where the second starts."""
    first_final = final_form(grammar, first)
    final_form(grammar, second)
    if first_final != second.start:
        raise FormMismatch(
            f"first certificate ends in [{serialize_form(first_final)}], "
            f"second starts at [{serialize_form(second.start)}]"
        )
    return Derivation(first.start, first.steps + second.steps)


def embed_derivation(
    grammar: Grammar,
    derivation: Derivation,
    left: SententialForm,
    right: SententialForm,
) -> Derivation:
    """Run a certificate inside ``left ++ form ++ right``; positions shift by ``len(left)``."""
    final_form(grammar, derivation)
    shift = len(left)
    steps = tuple(Step(step.pos + shift, step.rule_id) for step in derivation.steps)
    return Derivation(left + derivation.start + right, steps)
