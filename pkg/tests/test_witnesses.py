"""Tests for src/witnesses.py: certificates for the constructed grammars."""

import itertools

import pytest

from src.constructions import CAT_FIRST, CAT_SECOND, CLO, UNION_FIRST, UNION_SECOND, concat, kleene, lift_form, union
from src.derivation import Derivation, Step, check_derivation
from src.errors import InvalidInput
from src.search import enumerate_minimal_derivations
from src.symbols import SideTag, parse_form
from src.witnesses import cat_witness, clo_witness, union_witness

F = parse_form

S = F("S")
A_ONLY = Derivation(S, (Step(0, 0),))


def _final(grammar, derivation):
    result = check_derivation(grammar, derivation)
    assert result.accepted, result.reason
    return result.final


# --- union_witness ----------------------------------------------------------


def test_union_witness_first_side(g_a, g_b):
    witness = union_witness(g_a, g_b, SideTag.FIRST, A_ONLY)

    assert witness.start == F("@uni")
    assert witness.step_count == 2
    assert _final(union(g_a, g_b), witness) == F("<1:uni:'a'>")


def test_union_witness_second_side_uses_offset_rules(g_a, g_b):
    witness = union_witness(g_a, g_b, SideTag.SECOND, A_ONLY)
    assert witness.steps == (Step(0, 1), Step(0, 3))
    assert _final(union(g_a, g_b), witness) == F("<2:uni:'b'>")


def test_union_witness_of_a_zero_step_certificate(g_ab, g_b):
    witness = union_witness(g_ab, g_b, SideTag.FIRST, Derivation(S))
    assert witness.step_count == 1
    assert _final(union(g_ab, g_b), witness) == F("<1:uni:S>")


def test_union_witness_rejects_bad_certificates(g_a, g_b):
    with pytest.raises(InvalidInput):
        union_witness(g_a, g_b, SideTag.FIRST, Derivation(F("'a'")))
    with pytest.raises(InvalidInput):
        union_witness(g_a, g_b, SideTag.FIRST, Derivation(S, (Step(0, 7),)))


# --- cat_witness ------------------------------------------------------------


def test_cat_witness(g_a, g_b):
    witness = cat_witness(g_a, g_b, A_ONLY, A_ONLY)

    assert witness.step_count == 3
    assert _final(concat(g_a, g_b), witness) == F("<1:cat:'a'> <2:cat:'b'>")


def test_cat_witness_of_zero_step_certificates(g_ab, g_two):
    witness = cat_witness(g_ab, g_two, Derivation(S), Derivation(S))
    assert witness == Derivation(F("@cat"), (Step(0, 0),))
    assert _final(concat(g_ab, g_two), witness) == F("<1:cat:S> <2:cat:S>")


# --- clo_witness ------------------------------------------------------------


def test_clo_witness_of_no_segments(g_ab):
    witness = clo_witness(g_ab, [])
    assert witness.step_count == 1
    assert _final(kleene(g_ab), witness) == ()


def test_clo_witness_of_two_segments(g_ab, d_ab):
    witness = clo_witness(g_ab, [d_ab, d_ab])

    assert witness.step_count == 7
    assert _final(kleene(g_ab), witness) == F("'a' 'b' 'a' 'b'")


def test_clo_witness_keeps_segment_order(g_two):
    """Segments 'b' and 'a' 'b' come out in the order given."""
    just_b = Derivation(S, (Step(0, 0), Step(0, 2)))
    a_b = Derivation(S, (Step(0, 0), Step(0, 1)))
    witness = clo_witness(g_two, [just_b, a_b])
    assert _final(kleene(g_two), witness) == F("'b' 'a' 'b'")


def test_clo_witness_rejects_a_bad_segment(g_ab, d_ab):
    with pytest.raises(InvalidInput):
        clo_witness(g_ab, [d_ab, Derivation(F("'a'"))])


# --- Witness soundness over the fixed corpus --------------------------------


def test_witness_soundness_and_step_arithmetic(corpus):
    """Every minimal source certificate within (5, 10) lifts to an accepted witness."""
    certificates = {name: enumerate_minimal_derivations(grammar, 5, 10) for name, grammar in corpus.items()}

    for name1, name2 in itertools.product(corpus, repeat=2):
        first, second = corpus[name1], corpus[name2]
        combined = union(first, second)
        for side, name, spec in ((SideTag.FIRST, name1, UNION_FIRST), (SideTag.SECOND, name2, UNION_SECOND)):
            for form, derivation in certificates[name]:
                witness = union_witness(first, second, side, derivation)
                assert _final(combined, witness) == lift_form(spec, form)
                assert witness.step_count == derivation.step_count + 1

        product = concat(first, second)
        for (form1, d1), (form2, d2) in itertools.product(certificates[name1][:8], certificates[name2][:8]):
            witness = cat_witness(first, second, d1, d2)
            assert _final(product, witness) == lift_form(CAT_FIRST, form1) + lift_form(CAT_SECOND, form2)
            assert witness.step_count == d1.step_count + d2.step_count + 1

    for name, grammar in corpus.items():
        closure = kleene(grammar)
        pool = certificates[name][:5]
        for count in range(4):
            for chosen in itertools.product(pool, repeat=count):
                witness = clo_witness(grammar, [d for _, d in chosen])
                expected = tuple(symbol for form, _ in chosen for symbol in lift_form(CLO, form))
                assert _final(closure, witness) == expected
                assert witness.step_count == sum(d.step_count for _, d in chosen) + count + 1
