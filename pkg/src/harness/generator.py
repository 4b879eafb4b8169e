"""Seeded random grammars and random derivations for the verification corpus.

Both generators draw from ``random.Random(seed)`` (CPython's Mersenne Twister,
recorded in reports as ``python-random-mt19937``), so the same parameters
always give the same output.
"""

from __future__ import annotations

import logging
import random
import string

from pydantic import BaseModel, ConfigDict, Field

from src.derivation import Derivation, Step
from src.grammar import Grammar, validate_grammar
from src.symbols import Nt, NtName, PlainNt, PlainT, SententialForm, Symbol, T

# Bounded retries when a drawn rule duplicates an existing one.
_DUPLICATE_RETRIES = 8


class GenParams(BaseModel):
    """Size limits for random_grammar; every count is at least one."""

    model_config = ConfigDict(frozen=True)

    max_nonterminals: int = Field(default=3, ge=1)
    max_terminals: int = Field(default=2, ge=1)
    max_rules: int = Field(default=5, ge=1)
    max_rhs_len: int = Field(default=3, ge=1)
    epsilon_rule_probability: float = Field(default=0.2, ge=0.0, le=1.0)
    seed: int = Field(default=0, ge=0, lt=2**64)


def _nonterminal_names(count: int) -> list[NtName]:
    names = ["S"] + list(string.ascii_uppercase.replace("S", ""))
    if count > len(names):
        names += [f"N{index}" for index in range(count - len(names))]
    return [PlainNt(name) for name in names[:count]]


def _terminal_names(count: int) -> list[PlainT]:
    names = list(string.ascii_lowercase)
    if count > len(names):
        names += [f"t{index}" for index in range(count - len(names))]
    return [PlainT(name) for name in names[:count]]


def random_grammar(params: GenParams) -> Grammar:
    """A valid grammar in which every nonterminal has at least one rule."""
    rng = random.Random(params.seed)
    nt_count = rng.randint(1, min(params.max_nonterminals, params.max_rules))
    nonterminals = _nonterminal_names(nt_count)
    terminals = _terminal_names(rng.randint(1, params.max_terminals))
    alphabet: list[Symbol] = [Nt(name) for name in nonterminals] + [T(name) for name in terminals]
    rule_count = rng.randint(nt_count, params.max_rules)

    def draw_rhs() -> SententialForm:
        if rng.random() < params.epsilon_rule_probability:
            return ()
        return tuple(rng.choice(alphabet) for _ in range(rng.randint(1, params.max_rhs_len)))

    productions: list[tuple[NtName, SententialForm]] = []
    seen: set[tuple[NtName, SententialForm]] = set()
    lhs_order = nonterminals + [rng.choice(nonterminals) for _ in range(rule_count - nt_count)]
    for index, lhs in enumerate(lhs_order):
        for _ in range(_DUPLICATE_RETRIES):
            production = (lhs, draw_rhs())
            if production not in seen:
                seen.add(production)
                productions.append(production)
                break
        else:
            # Only extra rules may be dropped; each nonterminal's first rule cannot be a duplicate.
            assert index >= nt_count

    grammar = Grammar.build(nonterminals[0], productions, nonterminals, terminals)
    assert validate_grammar(grammar).ok
    logging.debug(f"Random grammar (seed {params.seed}): {len(grammar.rules)} rules")
    return grammar


def random_derivation(grammar: Grammar, rng: random.Random, max_steps: int, max_len: int) -> Derivation:
    """A random walk of up to ``max_steps`` steps from the start symbol, keeping forms within ``max_len``."""
    start: SententialForm = (Nt(grammar.start),)
    form = start
    steps: list[Step] = []
    for _ in range(rng.randint(0, max_steps)):
        choices = [
            Step(pos, rule.id)
            for pos, symbol in enumerate(form)
            if isinstance(symbol, Nt)
            for rule in grammar.rules_by_lhs.get(symbol.name, ())
            if len(form) - 1 + len(rule.rhs) <= max_len
        ]
        if not choices:
            break
        step = rng.choice(choices)
        form = form[: step.pos] + grammar.rules[step.rule_id].rhs + form[step.pos + 1:]
        steps.append(step)
    return Derivation(start, tuple(steps))
