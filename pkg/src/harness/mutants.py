"""Deliberately wrong constructions used to show the inverse checks can fail."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable

from src.constructions import CAT_FIRST, CAT_SECOND, CLO, UNION_FIRST, UNION_SECOND, concat, kleene, lift_nt, union
from src.grammar import Grammar, Rule
from src.harness.reports import TheoremId
from src.symbols import FreshStart, Nt, OpTag


def _with_extra_rule(grammar: Grammar, rule: Rule) -> Grammar:
    return replace(grammar, rules=grammar.rules + (rule,))


def union_extra_rule(first: Grammar, second: Grammar) -> Grammar:
    """Adds ``@uni -> <1:uni:S1> <2:uni:S2>``, which mixes the two sides."""
    grammar = union(first, second)
    rhs = (Nt(lift_nt(UNION_FIRST, first.start)), Nt(lift_nt(UNION_SECOND, second.start)))
    return _with_extra_rule(grammar, Rule(len(grammar.rules), FreshStart(OpTag.UNION), rhs))


def cat_swapped_sides(first: Grammar, second: Grammar) -> Grammar:
    """Adds ``@cat -> <2:cat:S2> <1:cat:S1>``, putting the second side first."""
    grammar = concat(first, second)
    rhs = (Nt(lift_nt(CAT_SECOND, second.start)), Nt(lift_nt(CAT_FIRST, first.start)))
    return _with_extra_rule(grammar, Rule(len(grammar.rules), FreshStart(OpTag.CAT), rhs))


def kleene_swapped_recursion(grammar: Grammar) -> Grammar:
    """Replaces ``@clo -> @clo <1:clo:S>`` with ``@clo -> <1:clo:S> @clo``."""
    closure = kleene(grammar)
    start = FreshStart(OpTag.CLO)
    swapped = Rule(0, start, (Nt(lift_nt(CLO, grammar.start)), Nt(start)))
    return replace(closure, rules=(swapped,) + closure.rules[1:])


@dataclass(frozen=True)
class Mutant:
    name: str
    theorem: TheoremId
    build: Callable[..., Grammar]


MUTANTS: dict[str, Mutant] = {
    mutant.name: mutant
    for mutant in (
        Mutant("union_extra_rule", TheoremId.UNI_CORRECT_INV, union_extra_rule),
        Mutant("cat_swapped_sides", TheoremId.CAT_CORRECT_INV, cat_swapped_sides),
        Mutant("kleene_swapped_recursion", TheoremId.CLO_CORRECT_INV, kleene_swapped_recursion),
    )
}
