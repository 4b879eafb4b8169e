"""Tests for src/symbols.py."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from src.symbols import (
    FreshStart,
    LiftedNt,
    Nt,
    OpTag,
    PlainNt,
    PlainT,
    SideT,
    SideTag,
    T,
    is_sentence,
    parse_form,
    parse_symbol,
    serialize_form,
    sort_forms,
)

# --- Serialization ----------------------------------------------------------


@pytest.mark.parametrize(
    "symbol, text",
    [
        (Nt(PlainNt("S")), "S"),
        (Nt(FreshStart(OpTag.UNION)), "@uni"),
        (Nt(FreshStart(OpTag.CAT)), "@cat"),
        (Nt(FreshStart(OpTag.CLO)), "@clo"),
        (Nt(LiftedNt(SideTag.FIRST, OpTag.UNION, PlainNt("S"))), "<1:uni:S>"),
        (Nt(LiftedNt(SideTag.SECOND, OpTag.CAT, PlainNt("S"))), "<2:cat:S>"),
        (Nt(LiftedNt(SideTag.FIRST, OpTag.CLO, PlainNt("S"))), "<1:clo:S>"),
        (T(PlainT("a")), "'a'"),
        (T(SideT(SideTag.FIRST, OpTag.UNION, PlainT("a"))), "<1:uni:'a'>"),
        (
            Nt(LiftedNt(SideTag.FIRST, OpTag.CAT, LiftedNt(SideTag.SECOND, OpTag.UNION, PlainNt("S")))),
            "<1:cat:<2:uni:S>>",
        ),
    ],
)
def test_serialize_and_parse_symbol(symbol, text):
    """Serialization is bit-exact and parse_symbol inverts it."""
    assert str(symbol) == text
    assert parse_symbol(text) == symbol


def test_serialize_form_uses_single_spaces():
    assert serialize_form(parse_form("'a'   S  'b'")) == "'a' S 'b'"
    assert serialize_form(()) == ""


@pytest.mark.parametrize(
    "token",
    ["@foo", "''", "'a", "<3:uni:S>", "<2:clo:S>", "<1:clo:'a'>", "<1:uni:S", "a<b"],
)
def test_parse_symbol_rejects_malformed_tokens(token):
    """Unknown fresh starts, bad quoting, side 2 of a closure and stray brackets are errors."""
    with pytest.raises(ValueError):
        parse_symbol(token)


# --- Constructors -----------------------------------------------------------


def test_plain_names_reject_reserved_characters():
    with pytest.raises(ValueError):
        PlainNt("")
    with pytest.raises(ValueError):
        PlainNt("@S")
    with pytest.raises(ValueError):
        PlainT("a b")


def test_closure_wrappers_are_first_side_only():
    with pytest.raises(ValueError):
        LiftedNt(SideTag.SECOND, OpTag.CLO, PlainNt("S"))
    with pytest.raises(ValueError):
        SideT(SideTag.FIRST, OpTag.CLO, PlainT("a"))


# --- Forms ------------------------------------------------------------------


def test_is_sentence():
    assert is_sentence(parse_form("'a' 'b'"))
    assert is_sentence(())
    assert not is_sentence(parse_form("'a' S"))


def test_sort_forms_is_shortlex_over_utf8_bytes():
    """Shorter forms first; equal lengths compare symbol by symbol."""
    forms = [parse_form(text) for text in ("'b'", "S 'a'", "", "'a'", "'a' S")]
    assert [serialize_form(form) for form in sort_forms(forms)] == ["", "'a'", "'b'", "'a' S", "S 'a'"]


_NAMES = st.text(alphabet="abcxyzAB_0123", min_size=1, max_size=4)
_NT_NAMES = st.recursive(
    st.builds(PlainNt, _NAMES) | st.sampled_from([FreshStart(op) for op in OpTag]),
    lambda inner: st.builds(LiftedNt, st.sampled_from(list(SideTag)), st.sampled_from([OpTag.UNION, OpTag.CAT]), inner)
    | st.builds(LiftedNt, st.just(SideTag.FIRST), st.just(OpTag.CLO), inner),
    max_leaves=4,
)
_T_NAMES = st.recursive(
    st.builds(PlainT, _NAMES),
    lambda inner: st.builds(SideT, st.sampled_from(list(SideTag)), st.sampled_from([OpTag.UNION, OpTag.CAT]), inner),
    max_leaves=4,
)
_SYMBOLS = st.builds(Nt, _NT_NAMES) | st.builds(T, _T_NAMES)


@given(st.lists(_SYMBOLS, max_size=6).map(tuple))
def test_parse_form_inverts_serialize_form(form):
    assert parse_form(serialize_form(form)) == form
