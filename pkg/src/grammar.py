"""Grammar data model and its invariant checks."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from src.symbols import NtName, Nt, SententialForm, T, TName, serialize_form, serialize_nt, serialize_t


@dataclass(frozen=True, slots=True)
class Rule:
    """``lhs -> rhs``; ``id`` is the rule's index in its grammar."""

    id: int
    lhs: NtName
    rhs: SententialForm

    def __str__(self) -> str:
        rhs = serialize_form(self.rhs)
        return f"{serialize_nt(self.lhs)} ->" + (f" {rhs}" if rhs else "")


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset[NtName]
    terminals: frozenset[TName]
    start: NtName
    rules: tuple[Rule, ...] = field(default=())

    @classmethod
    def build(
        cls,
        start: NtName,
        productions: Iterable[tuple[NtName, Sequence[Nt | T]]],
        nonterminals: Iterable[NtName] | None = None,
        terminals: Iterable[TName] | None = None,
    ) -> "Grammar":
        """Number the productions in order; alphabets default to the symbols the rules use."""
        rules = tuple(Rule(index, lhs, tuple(rhs)) for index, (lhs, rhs) in enumerate(productions))
        if nonterminals is None:
            nts = {start}
            for rule in rules:
                nts.add(rule.lhs)
                nts.update(symbol.name for symbol in rule.rhs if isinstance(symbol, Nt))
            nonterminals = nts
        if terminals is None:
            terminals = {symbol.name for rule in rules for symbol in rule.rhs if isinstance(symbol, T)}
        return cls(frozenset(nonterminals), frozenset(terminals), start, rules)

    @cached_property
    def rules_by_lhs(self) -> dict[NtName, tuple[Rule, ...]]:
        index: dict[NtName, list[Rule]] = defaultdict(list)
        for rule in self.rules:
            index[rule.lhs].append(rule)
        return {lhs: tuple(rules) for lhs, rules in index.items()}

    def has_symbol(self, symbol: Nt | T) -> bool:
        if isinstance(symbol, Nt):
            return symbol.name in self.nonterminals
        return symbol.name in self.terminals

    def __str__(self) -> str:
        return f"Grammar(start={serialize_nt(self.start)}, {len(self.rules)} rules)"


@dataclass(frozen=True, slots=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_grammar(grammar: Grammar) -> ValidationReport:
    """Report every broken grammar invariant. Never raises."""
    violations: list[str] = []

    if grammar.start not in grammar.nonterminals:
        violations.append(f"start not declared: {serialize_nt(grammar.start)}")

    nt_names = {serialize_nt(name) for name in grammar.nonterminals}
    t_names = {serialize_t(name) for name in grammar.terminals}
    for name in sorted(nt_names & t_names):
        violations.append(f"name collision between a nonterminal and a terminal: {name}")

    seen: dict[tuple[NtName, SententialForm], int] = {}
    for index, rule in enumerate(grammar.rules):
        if rule.id != index:
            violations.append(f"rule at index {index} carries id {rule.id}")
        if rule.lhs not in grammar.nonterminals:
            violations.append(f"rule {index}: lhs not declared: {serialize_nt(rule.lhs)}")
        for symbol in rule.rhs:
            if not grammar.has_symbol(symbol):
                violations.append(f"rule {index}: symbol not declared: {symbol}")
        key = (rule.lhs, rule.rhs)
        if key in seen:
            violations.append(f"duplicate rule: rule {index} repeats rule {seen[key]} ({rule})")
        else:
            seen[key] = index

    return ValidationReport(tuple(violations))
