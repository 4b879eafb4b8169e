"""Grammar and certificate text formats.

Grammar (UTF-8, one directive per line, ``#`` starts a comment line)::

    start: S
    nonterminals: S
    terminals: 'a' 'b'
    rule: S -> 'a' S 'b'
    rule: S ->

Certificate::

    from: S
    step: pos=0 rule=0
    step: pos=1 rule=1

Serialization is canonical (single spaces, alphabets in byte order of their
serialized names, rules in id order), so parse followed by serialize is the
identity on serialized text.
"""

from __future__ import annotations

import re

from src.derivation import Derivation, Step
from src.errors import GrammarSyntaxError, GrammarValidationError
from src.grammar import Grammar, Rule, validate_grammar
from src.symbols import Nt, NtName, SententialForm, T, TName, parse_symbol, serialize_form, serialize_nt, serialize_t

_STEP_RE = re.compile(r"pos=([0-9]+) rule=([0-9]+)\Z")
_ARROW = "->"


def _symbols(tokens: list[str], line: int) -> SententialForm:
    try:
        return tuple(parse_symbol(token) for token in tokens)
    except ValueError as error:
        raise GrammarSyntaxError(line, str(error)) from None


def _directive(raw: str, line: int) -> tuple[str, str]:
    key, sep, value = raw.partition(":")
    if not sep:
        raise GrammarSyntaxError(line, f"expected '<directive>: ...', got {raw!r}")
    return key.strip(), value.strip()


def _nonterminal(symbol: Nt | T, line: int, role: str) -> NtName:
    if not isinstance(symbol, Nt):
        raise GrammarSyntaxError(line, f"{role} must be a nonterminal, got {symbol}")
    return symbol.name


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            yield number, stripped


def parse_form_text(text: str, line: int = 1) -> SententialForm:
    """Parse a space-separated form; syntax errors carry ``line``."""
    return _symbols(text.split(), line)


def parse_grammar(text: str) -> Grammar:
    """Parse the grammar format. Raises GrammarSyntaxError or GrammarValidationError."""
    start: NtName | None = None
    nonterminals: list[NtName] | None = None
    terminals: list[TName] | None = None
    productions: list[tuple[NtName, SententialForm]] = []

    for number, raw in _content_lines(text):
        key, value = _directive(raw, number)
        tokens = value.split()
        if key == "start":
            if start is not None:
                raise GrammarSyntaxError(number, "duplicate 'start' line")
            if len(tokens) != 1:
                raise GrammarSyntaxError(number, "'start' takes exactly one nonterminal")
            start = _nonterminal(_symbols(tokens, number)[0], number, "start")
        elif key == "nonterminals":
            if nonterminals is not None:
                raise GrammarSyntaxError(number, "duplicate 'nonterminals' line")
            nonterminals = [_nonterminal(symbol, number, "nonterminals entry") for symbol in _symbols(tokens, number)]
        elif key == "terminals":
            if terminals is not None:
                raise GrammarSyntaxError(number, "duplicate 'terminals' line")
            terminals = []
            for symbol in _symbols(tokens, number):
                if not isinstance(symbol, T):
                    raise GrammarSyntaxError(number, f"terminals entry must be a terminal, got {symbol}")
                terminals.append(symbol.name)
        elif key == "rule":
            if len(tokens) < 2 or tokens[1] != _ARROW:
                raise GrammarSyntaxError(number, f"expected 'rule: <NT> {_ARROW} <sym> ...'")
            lhs = _nonterminal(_symbols(tokens[:1], number)[0], number, "rule lhs")
            productions.append((lhs, _symbols(tokens[2:], number)))
        else:
            raise GrammarSyntaxError(number, f"unknown directive {key!r}")

    if start is None:
        raise GrammarSyntaxError(0, "missing 'start' line")
    grammar = Grammar.build(start, productions, nonterminals or (), terminals or ())
    report = validate_grammar(grammar)
    if not report.ok:
        raise GrammarValidationError(report)
    return grammar


def _sorted_names(names, serialize) -> list[str]:
    return sorted((serialize(name) for name in names), key=lambda text: text.encode("utf-8"))


def _line(key: str, body: str) -> str:
    return f"{key}: {body}" if body else f"{key}:"


def serialize_rule(rule: Rule) -> str:
    return _line("rule", str(rule))


def serialize_grammar(grammar: Grammar) -> str:
    lines = [
        _line("start", serialize_nt(grammar.start)),
        _line("nonterminals", " ".join(_sorted_names(grammar.nonterminals, serialize_nt))),
        _line("terminals", " ".join(_sorted_names(grammar.terminals, serialize_t))),
    ]
    lines.extend(serialize_rule(rule) for rule in grammar.rules)
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Derivation:
    start: SententialForm | None = None
    steps: list[Step] = []
    for number, raw in _content_lines(text):
        key, value = _directive(raw, number)
        if key == "from":
            if start is not None:
                raise GrammarSyntaxError(number, "duplicate 'from' line")
            if steps:
                raise GrammarSyntaxError(number, "'from' must precede the steps")
            start = parse_form_text(value, number)
        elif key == "step":
            if start is None:
                raise GrammarSyntaxError(number, "'step' before 'from'")
            match = _STEP_RE.match(value)
            if not match:
                raise GrammarSyntaxError(number, f"expected 'step: pos=<int> rule=<int>', got {value!r}")
            steps.append(Step(int(match.group(1)), int(match.group(2))))
        else:
            raise GrammarSyntaxError(number, f"unknown directive {key!r}")
    if start is None:
        raise GrammarSyntaxError(0, "missing 'from' line")
    return Derivation(start, tuple(steps))


def serialize_certificate(derivation: Derivation) -> str:
    lines = [_line("from", serialize_form(derivation.start))]
    lines.extend(f"step: pos={step.pos} rule={step.rule_id}" for step in derivation.steps)
    return "\n".join(lines) + "\n"
