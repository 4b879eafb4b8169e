"""Tests for src/derivation.py: the step function, the checker and certificate algebra."""

import random

import pytest

from src.derivation import (
    Derivation,
    Step,
    apply_rule_at,
    check_derivation,
    compose_derivations,
    embed_derivation,
    final_form,
    replay,
)
from src.errors import FormMismatch, InvalidInput, PositionOutOfRange, SymbolMismatch, UnknownRule
from src.harness.generator import random_derivation
from src.symbols import Nt, T, parse_form

F = parse_form


# --- apply_rule_at ----------------------------------------------------------


def test_apply_rule_at_substitutes(g_ab):
    assert apply_rule_at(g_ab, F("S"), 0, 0) == F("'a' S 'b'")
    assert apply_rule_at(g_ab, F("'a' S 'b'"), 1, 1) == F("'a' 'b'")


def test_apply_rule_at_terminal_is_a_mismatch(g_ab):
    with pytest.raises(SymbolMismatch):
        apply_rule_at(g_ab, F("'a' S 'b'"), 0, 0)


def test_apply_rule_at_wrong_nonterminal(g_two):
    """Rule 1 rewrites A, not S."""
    with pytest.raises(SymbolMismatch):
        apply_rule_at(g_two, F("S"), 0, 1)


def test_apply_rule_at_bad_position_and_rule(g_ab):
    with pytest.raises(PositionOutOfRange):
        apply_rule_at(g_ab, F("S"), 1, 0)
    with pytest.raises(PositionOutOfRange):
        apply_rule_at(g_ab, (), 0, 0)
    with pytest.raises(UnknownRule):
        apply_rule_at(g_ab, F("S"), 0, 2)


# --- check_derivation -------------------------------------------------------


def test_check_accepts_valid_certificate(g_ab, d_ab):
    result = check_derivation(g_ab, d_ab)

    assert result.accepted
    assert result.final == F("'a' 'b'")


def test_check_empty_steps_is_reflexive(g_ab):
    result = check_derivation(g_ab, Derivation(F("'a' 'b'")))
    assert result.accepted
    assert result.final == F("'a' 'b'")


def test_check_reports_first_failing_step(g_ab):
    result = check_derivation(g_ab, Derivation(F("S"), (Step(0, 1), Step(0, 0))))

    assert not result.accepted
    assert result.failed_step == 1
    assert "out of range" in result.reason


def test_replay_yields_every_intermediate_form(g_ab, d_ab):
    assert list(replay(g_ab, d_ab)) == [F("S"), F("'a' S 'b'"), F("'a' 'b'")]


def test_final_form_rejects_bad_certificate(g_ab):
    with pytest.raises(InvalidInput):
        final_form(g_ab, Derivation(F("'a'"), (Step(0, 0),)))


# --- compose_derivations / embed_derivation ---------------------------------


def test_compose_adds_steps(g_ab):
    first = Derivation(F("S"), (Step(0, 0),))
    second = Derivation(F("'a' S 'b'"), (Step(1, 1),))
    composed = compose_derivations(g_ab, first, second)

    assert composed.start == F("S")
    assert composed.step_count == 2
    assert final_form(g_ab, composed) == F("'a' 'b'")


def test_compose_with_empty_first(g_ab, d_ab):
    assert compose_derivations(g_ab, Derivation(F("S")), d_ab) == d_ab


def test_compose_form_mismatch(g_ab, d_ab):
    with pytest.raises(FormMismatch):
        compose_derivations(g_ab, d_ab, Derivation(F("S")))


def test_compose_rejected_input_is_invalid(g_ab, d_ab):
    with pytest.raises(InvalidInput):
        compose_derivations(g_ab, Derivation(F("S"), (Step(3, 0),)), d_ab)


def test_embed_shifts_positions(g_ab, d_ab):
    embedded = embed_derivation(g_ab, d_ab, F("'a'"), F("'b'"))

    assert embedded.start == F("'a' S 'b'")
    assert embedded.steps == (Step(1, 0), Step(2, 1))
    assert final_form(g_ab, embedded) == F("'a' 'a' 'b' 'b'")


def test_embed_with_empty_contexts_is_identity(g_ab, d_ab):
    assert embed_derivation(g_ab, d_ab, (), ()) == d_ab


def test_embed_after_a_nonterminal_context(g_ab):
    one_step = Derivation(F("S"), (Step(0, 0),))
    embedded = embed_derivation(g_ab, one_step, F("'a' S 'b'"), ())

    assert embedded.steps == (Step(3, 0),)
    assert final_form(g_ab, embedded) == F("'a' S 'b' 'a' S 'b'")


# --- Certificate algebra over random derivations ----------------------------

RANDOM_DERIVATIONS = 1000


def _contexts(grammar, rng):
    alphabet = [Nt(name) for name in sorted(grammar.nonterminals, key=str)] + [
        T(name) for name in sorted(grammar.terminals, key=str)
    ]
    return tuple(rng.choice(alphabet) for _ in range(rng.randint(0, 2)))


def test_certificate_algebra_on_random_derivations(corpus):
    """Reflexivity, transitivity and context embedding on seeded random certificates."""
    rng = random.Random(2024)
    grammars = list(corpus.values())
    for _ in range(RANDOM_DERIVATIONS):
        grammar = rng.choice(grammars)
        derivation = random_derivation(grammar, rng, max_steps=8, max_len=10)
        forms = list(replay(grammar, derivation))
        final = forms[-1]

        # reflexivity at every intermediate form
        for form in forms:
            assert check_derivation(grammar, Derivation(form)).final == form

        # splitting anywhere and composing gives the same certificate back
        cut = rng.randint(0, derivation.step_count)
        head = Derivation(derivation.start, derivation.steps[:cut])
        tail = Derivation(forms[cut], derivation.steps[cut:])
        composed = compose_derivations(grammar, head, tail)
        assert composed == derivation
        assert composed.step_count == head.step_count + tail.step_count

        left, right = _contexts(grammar, rng), _contexts(grammar, rng)
        embedded = embed_derivation(grammar, derivation, left, right)
        assert embedded.step_count == derivation.step_count
        assert final_form(grammar, embedded) == left + final + right
