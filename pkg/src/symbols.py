"""Symbols, sentential forms and their bit-exact text serialization.

Nonterminal and terminal names are recursive values: a plain name from a
grammar file, a fresh start symbol introduced by a construction, or a source
name wrapped with the side and operation that injected it into a result
grammar. Serialization:

    S                plain nonterminal
    @uni @cat @clo   fresh start symbols
    <1:uni:S>        nonterminal lifted from the first grammar of a union
    'a'              plain terminal
    <2:cat:'a'>      terminal lifted from the second grammar of a concatenation

Wrappers nest, e.g. ``<1:cat:<2:uni:S>>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import lru_cache
from typing import Iterable, TypeAlias

# Characters that would make a plain name ambiguous in the text format.
_FORBIDDEN_NAME_CHARS = frozenset("'<>")
_WRAPPER_RE = re.compile(r"<([12]):(uni|cat|clo):(.+)>\Z", re.DOTALL)


class OpTag(str, Enum):
    UNION = "uni"
    CAT = "cat"
    CLO = "clo"


class SideTag(IntEnum):
    FIRST = 1
    SECOND = 2


def _check_plain_name(name: str, kind: str) -> None:
    if not name:
        raise ValueError(f"{kind} name must not be empty")
    if any(ch.isspace() for ch in name) or _FORBIDDEN_NAME_CHARS.intersection(name):
        raise ValueError(f"{kind} name {name!r} contains whitespace or one of ' < >")


@dataclass(frozen=True, slots=True)
class PlainNt:
    name: str

    def __post_init__(self) -> None:
        _check_plain_name(self.name, "nonterminal")
        if self.name.startswith("@"):
            raise ValueError(f"nonterminal name {self.name!r} must not start with '@'")


@dataclass(frozen=True, slots=True)
class FreshStart:
    """The new root symbol introduced by a construction."""

    op: OpTag


@dataclass(frozen=True, slots=True)
class LiftedNt:
    """A source nonterminal injected into a constructed grammar."""

    side: SideTag
    op: OpTag
    inner: NtName

    def __post_init__(self) -> None:
        if self.op == OpTag.CLO and self.side != SideTag.FIRST:
            raise ValueError("closure lifting only has a first side")


@dataclass(frozen=True, slots=True)
class PlainT:
    name: str

    def __post_init__(self) -> None:
        _check_plain_name(self.name, "terminal")


@dataclass(frozen=True, slots=True)
class SideT:
    """A source terminal tagged with the side of a union or concatenation."""

    side: SideTag
    op: OpTag
    inner: TName

    def __post_init__(self) -> None:
        if self.op == OpTag.CLO:
            raise ValueError("closure never wraps terminals")


NtName: TypeAlias = PlainNt | FreshStart | LiftedNt
TName: TypeAlias = PlainT | SideT


@dataclass(frozen=True, slots=True)
class Nt:
    name: NtName

    def __str__(self) -> str:
        return serialize_nt(self.name)


@dataclass(frozen=True, slots=True)
class T:
    name: TName

    def __str__(self) -> str:
        return serialize_t(self.name)


Symbol: TypeAlias = Nt | T
SententialForm: TypeAlias = tuple[Symbol, ...]


@lru_cache(maxsize=None)
def serialize_nt(name: NtName) -> str:
    match name:
        case PlainNt(text):
            return text
        case FreshStart(op):
            return f"@{op.value}"
        case LiftedNt(side, op, inner):
            return f"<{side.value}:{op.value}:{serialize_nt(inner)}>"
    raise TypeError(f"not a nonterminal name: {name!r}")


@lru_cache(maxsize=None)
def serialize_t(name: TName) -> str:
    match name:
        case PlainT(text):
            return f"'{text}'"
        case SideT(side, op, inner):
            return f"<{side.value}:{op.value}:{serialize_t(inner)}>"
    raise TypeError(f"not a terminal name: {name!r}")


def serialize_form(form: Iterable[Symbol]) -> str:
    """Space-separated symbols; the empty form serializes to the empty string."""
    return " ".join(str(symbol) for symbol in form)


@lru_cache(maxsize=4096)
def parse_symbol(token: str) -> Symbol:
    """Parse one serialized symbol. Raises ValueError on malformed input."""
    match = _WRAPPER_RE.match(token)
    if match:
        side = SideTag(int(match.group(1)))
        op = OpTag(match.group(2))
        inner = parse_symbol(match.group(3))
        if isinstance(inner, Nt):
            return Nt(LiftedNt(side, op, inner.name))
        return T(SideT(side, op, inner.name))
    if token.startswith("@"):
        try:
            return Nt(FreshStart(OpTag(token[1:])))
        except ValueError:
            raise ValueError(f"unknown fresh start symbol {token!r}") from None
    if token.startswith("'"):
        if len(token) < 3 or not token.endswith("'"):
            raise ValueError(f"malformed terminal {token!r}")
        return T(PlainT(token[1:-1]))
    return Nt(PlainNt(token))


def parse_form(text: str) -> SententialForm:
    """Parse a space-separated form; blank text is the empty form."""
    return tuple(parse_symbol(token) for token in text.split())


def is_sentence(form: SententialForm) -> bool:
    """A sentence is a form without nonterminals."""
    return all(isinstance(symbol, T) for symbol in form)


def form_sort_key(form: SententialForm) -> tuple[int, tuple[bytes, ...]]:
    """Shortlex key over the UTF-8 serialization of each symbol."""
    return len(form), tuple(str(symbol).encode("utf-8") for symbol in form)


def sort_forms(forms: Iterable[SententialForm]) -> list[SententialForm]:
    return sorted(forms, key=form_sort_key)
