"""Union, concatenation and Kleene closure of grammars.

Source symbols are injected into the result grammar by wrapping them with the
operation and the side they came from, so the two sources of a binary
construction never share a symbol, even when they are the same grammar.

Rule ids of a constructed grammar are laid out as: the construction's own
start rules first, then the first source's rules in source order, then the
second source's. The witness builders rely on this layout.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable

from src.errors import InvalidInput
from src.grammar import Grammar, validate_grammar
from src.symbols import (
    FreshStart,
    LiftedNt,
    Nt,
    NtName,
    OpTag,
    SententialForm,
    SideT,
    SideTag,
    Symbol,
    T,
    TName,
)

# Number of rules each construction adds ahead of the lifted source rules.
START_RULE_COUNT = {OpTag.UNION: 2, OpTag.CAT: 1, OpTag.CLO: 2}


@dataclass(frozen=True, slots=True)
class LiftSpec:
    op: OpTag
    side: SideTag = SideTag.FIRST

    def __post_init__(self) -> None:
        if self.op == OpTag.CLO and self.side != SideTag.FIRST:
            raise ValueError("closure lifting only has a first side")


UNION_FIRST = LiftSpec(OpTag.UNION, SideTag.FIRST)
UNION_SECOND = LiftSpec(OpTag.UNION, SideTag.SECOND)
CAT_FIRST = LiftSpec(OpTag.CAT, SideTag.FIRST)
CAT_SECOND = LiftSpec(OpTag.CAT, SideTag.SECOND)
CLO = LiftSpec(OpTag.CLO)


def lift_nt(spec: LiftSpec, name: NtName) -> NtName:
    return LiftedNt(spec.side, spec.op, name)


def lift_t(spec: LiftSpec, name: TName) -> TName:
    if spec.op == OpTag.CLO:
        return name
    return SideT(spec.side, spec.op, name)


def lift_symbol(spec: LiftSpec, symbol: Symbol) -> Symbol:
    if isinstance(symbol, Nt):
        return Nt(lift_nt(spec, symbol.name))
    return T(lift_t(spec, symbol.name))


def lift_form(spec: LiftSpec, form: Iterable[Symbol]) -> SententialForm:
    """Wrap every symbol of a source form for the given construction side."""
    return tuple(lift_symbol(spec, symbol) for symbol in form)


def unlift_symbol(spec: LiftSpec, symbol: Symbol) -> Symbol | None:
    """Strip this spec's wrapper, or None if the symbol does not carry it."""
    match symbol:
        case Nt(LiftedNt(side, op, inner)) if side == spec.side and op == spec.op:
            return Nt(inner)
        case T(name) if spec.op == OpTag.CLO:
            return T(name)
        case T(SideT(side, op, inner)) if side == spec.side and op == spec.op:
            return T(inner)
    return None


def unlift_form(spec: LiftSpec, form: Iterable[Symbol]) -> SententialForm | None:
    """Inverse of lift_form on uniformly tagged forms; None on anything else."""
    result = []
    for symbol in form:
        source = unlift_symbol(spec, symbol)
        if source is None:
            return None
        result.append(source)
    return tuple(result)


def is_tagged(spec: LiftSpec, symbol: Symbol) -> bool:
    return unlift_symbol(spec, symbol) is not None


def _require_valid(*grammars: Grammar) -> None:
    for position, grammar in enumerate(grammars, start=1):
        report = validate_grammar(grammar)
        if not report.ok:
            raise InvalidInput(f"source grammar {position} is invalid: {'; '.join(report.violations)}")


def _lifted_productions(spec: LiftSpec, grammar: Grammar) -> list[tuple[NtName, SententialForm]]:
    return [(lift_nt(spec, rule.lhs), lift_form(spec, rule.rhs)) for rule in grammar.rules]


def _lifted_alphabets(spec: LiftSpec, grammar: Grammar) -> tuple[set[NtName], set[TName]]:
    return (
        {lift_nt(spec, name) for name in grammar.nonterminals},
        {lift_t(spec, name) for name in grammar.terminals},
    )


def _binary(op: OpTag, first: Grammar, second: Grammar, start_rhs: list[SententialForm]) -> Grammar:
    _require_valid(first, second)
    first_spec, second_spec = LiftSpec(op, SideTag.FIRST), LiftSpec(op, SideTag.SECOND)
    start: NtName = FreshStart(op)
    nts1, ts1 = _lifted_alphabets(first_spec, first)
    nts2, ts2 = _lifted_alphabets(second_spec, second)
    productions = [(start, rhs) for rhs in start_rhs]
    productions += _lifted_productions(first_spec, first)
    productions += _lifted_productions(second_spec, second)
    result = Grammar.build(start, productions, {start} | nts1 | nts2, ts1 | ts2)
    logging.debug(f"Built {op.value} grammar with {len(result.rules)} rules")
    return result


def union(first: Grammar, second: Grammar) -> Grammar:
    """@uni -> <1:uni:S1> | <2:uni:S2>, plus both sources' lifted rules."""
    return _binary(
        OpTag.UNION,
        first,
        second,
        [
            (Nt(lift_nt(UNION_FIRST, first.start)),),
            (Nt(lift_nt(UNION_SECOND, second.start)),),
        ],
    )


def concat(first: Grammar, second: Grammar) -> Grammar:
    """@cat -> <1:cat:S1> <2:cat:S2>, plus both sources' lifted rules."""
    return _binary(
        OpTag.CAT,
        first,
        second,
        [(Nt(lift_nt(CAT_FIRST, first.start)), Nt(lift_nt(CAT_SECOND, second.start)))],
    )


def kleene(grammar: Grammar) -> Grammar:
    """@clo -> @clo <1:clo:S> | ε, plus the lifted rules; terminals are shared unchanged."""
    _require_valid(grammar)
    start: NtName = FreshStart(OpTag.CLO)
    nts, ts = _lifted_alphabets(CLO, grammar)
    productions: list[tuple[NtName, SententialForm]] = [
        (start, (Nt(start), Nt(lift_nt(CLO, grammar.start)))),
        (start, ()),
    ]
    productions += _lifted_productions(CLO, grammar)
    result = Grammar.build(start, productions, {start} | nts, ts)
    logging.debug(f"Built clo grammar with {len(result.rules)} rules")
    return result


def lifted_rule_id(spec: LiftSpec, rule_id: int, first: Grammar | None = None) -> int:
    """Id of a source rule inside the constructed grammar.

    Second-side ids are offset by the first source's rule count, so ``first``
    is required for them.
    """
    offset = START_RULE_COUNT[spec.op]
    if spec.side == SideTag.SECOND:
        if first is None:
            raise ValueError("the first source grammar is needed to place second-side rules")
        offset += len(first.rules)
    return offset + rule_id
