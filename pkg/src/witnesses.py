"""Builders that turn source certificates into certificates of a constructed grammar.

Each builder is the constructive side of a closure property: given
derivations in the source grammar(s), it produces a derivation in the union,
concatenation or closure grammar ending in the lifted result. The output is a
plain certificate and can be re-checked independently with check_derivation.
"""

from __future__ import annotations

import logging
from typing import Sequence

from src.constructions import (
    CAT_FIRST,
    CAT_SECOND,
    CLO,
    LiftSpec,
    concat,
    kleene,
    lift_form,
    lift_nt,
    lifted_rule_id,
)
from src.derivation import Derivation, Step, compose_derivations, embed_derivation, final_form
from src.errors import InvalidInput
from src.grammar import Grammar
from src.symbols import FreshStart, Nt, OpTag, SententialForm, SideTag

# Rule ids of the construction's own rules (see the layout in constructions).
UNION_START_RULE = {SideTag.FIRST: 0, SideTag.SECOND: 1}
CAT_START_RULE = 0
CLO_EXTEND_RULE = 0
CLO_EMPTY_RULE = 1


def _require_from_start(grammar: Grammar, derivation: Derivation, label: str) -> None:
    if derivation.start != (Nt(grammar.start),):
        raise InvalidInput(f"{label} does not start from the start symbol alone")
    final_form(grammar, derivation)


def lift_derivation(spec: LiftSpec, derivation: Derivation, first: Grammar | None = None) -> Derivation:
    """Replay a source certificate on the lifted form with the lifted rules; positions are unchanged."""
    steps = tuple(Step(step.pos, lifted_rule_id(spec, step.rule_id, first)) for step in derivation.steps)
    return Derivation(lift_form(spec, derivation.start), steps)


def union_witness(first: Grammar, second: Grammar, side: SideTag, derivation: Derivation) -> Derivation:
    """[@uni] ⇒ [<side:uni:S>] ⇒* lift(final); one step more than the source certificate."""
    source = first if side == SideTag.FIRST else second
    _require_from_start(source, derivation, f"source certificate for side {side.value}")
    spec = LiftSpec(OpTag.UNION, side)
    lifted = lift_derivation(spec, derivation, first)
    start_step = Step(0, UNION_START_RULE[side])
    logging.debug(f"Union witness for side {side.value}: {derivation.step_count + 1} steps")
    return Derivation((Nt(FreshStart(OpTag.UNION)),), (start_step,) + lifted.steps)


def cat_witness(first: Grammar, second: Grammar, first_derivation: Derivation, second_derivation: Derivation) -> Derivation:
    """[@cat] ⇒ [<1:cat:S1> <2:cat:S2>] ⇒* lift(final1) [<2:cat:S2>] ⇒* lift(final1) lift(final2)."""
    _require_from_start(first, first_derivation, "first source certificate")
    _require_from_start(second, second_derivation, "second source certificate")
    grammar = concat(first, second)

    opening = Derivation((Nt(FreshStart(OpTag.CAT)),), (Step(0, CAT_START_RULE),))
    second_root = (Nt(lift_nt(CAT_SECOND, second.start)),)
    left_part = embed_derivation(grammar, lift_derivation(CAT_FIRST, first_derivation, first), (), second_root)
    left_final = lift_form(CAT_FIRST, final_form(first, first_derivation))
    right_part = embed_derivation(grammar, lift_derivation(CAT_SECOND, second_derivation, first), left_final, ())

    witness = compose_derivations(grammar, compose_derivations(grammar, opening, left_part), right_part)
    logging.debug(f"Concatenation witness: {witness.step_count} steps")
    return witness


def clo_witness(grammar: Grammar, derivations: Sequence[Derivation]) -> Derivation:
    """Certificate of lift(final1) ... lift(finaln) in the closure grammar.

    Starts from ``[@clo] ⇒ []`` and appends one segment at a time:
    ``[@clo] ⇒ [@clo <1:clo:S>] ⇒* prefix [<1:clo:S>] ⇒* prefix lift(final)``.
    """
    for index, derivation in enumerate(derivations):
        _require_from_start(grammar, derivation, f"segment {index}")
    closure = kleene(grammar)
    root = (Nt(FreshStart(OpTag.CLO)),)
    segment_root = (Nt(lift_nt(CLO, grammar.start)),)

    witness = Derivation(root, (Step(0, CLO_EMPTY_RULE),))
    prefix: SententialForm = ()
    for derivation in derivations:
        extend = Derivation(root, (Step(0, CLO_EXTEND_RULE),))
        previous = embed_derivation(closure, witness, (), segment_root)
        segment = embed_derivation(closure, lift_derivation(CLO, derivation), prefix, ())
        witness = compose_derivations(closure, compose_derivations(closure, extend, previous), segment)
        prefix = prefix + lift_form(CLO, final_form(grammar, derivation))

    logging.debug(f"Closure witness over {len(derivations)} segments: {witness.step_count} steps")
    return witness
