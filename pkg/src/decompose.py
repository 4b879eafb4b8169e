"""Classifiers and decomposers for forms of constructed grammars.

These are the checkable side of the inverse closure properties: a form
generated by a union, concatenation or closure grammar must split back into
lifted forms that the source grammar(s) generate. Source witnesses are found
with the bounded search oracle, so "absent" always means "not found within
the given bounds".
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum

from src.constructions import CAT_FIRST, CAT_SECOND, CLO, UNION_FIRST, UNION_SECOND, is_tagged, kleene, unlift_form
from src.derivation import Derivation
from src.grammar import Grammar
from src.search import GenerationOracle, SearchBounds
from src.symbols import FreshStart, Nt, OpTag, SententialForm, serialize_form


class UnionKind(str, Enum):
    START_FORM = "StartForm"
    FROM_FIRST = "FromFirst"
    FROM_SECOND = "FromSecond"
    NOT_LIFTED = "NotLifted"


@dataclass(frozen=True, slots=True)
class UnionClassification:
    kind: UnionKind
    source_form: SententialForm | None = None

    def __str__(self) -> str:
        if self.source_form is None:
            return self.kind.value
        return f"{self.kind.value}({serialize_form(self.source_form)})"


@dataclass(frozen=True, slots=True)
class CatDecomposition:
    first: SententialForm
    second: SententialForm
    first_witness: Derivation
    second_witness: Derivation


class CloKind(str, Enum):
    EMPTY_FORM = "EmptyForm"
    START_FORM = "StartForm"
    SPLIT = "Split"


@dataclass(frozen=True, slots=True)
class CloDecomposition:
    kind: CloKind
    prefix: SententialForm | None = None
    tail: SententialForm | None = None
    prefix_witness: Derivation | None = None
    tail_witness: Derivation | None = None


def _over_alphabets(grammar: Grammar, form: SententialForm) -> bool:
    return all(grammar.has_symbol(symbol) for symbol in form)


def union_classify(first: Grammar, second: Grammar, form: SententialForm) -> UnionClassification:
    """Which side of a union a form comes from.

    The empty form is the lift of the empty form on either side; it is
    reported as FromFirst.
    """
    if form == (Nt(FreshStart(OpTag.UNION)),):
        return UnionClassification(UnionKind.START_FORM)
    source = unlift_form(UNION_FIRST, form)
    if source is not None and _over_alphabets(first, source):
        return UnionClassification(UnionKind.FROM_FIRST, source)
    source = unlift_form(UNION_SECOND, form)
    if source is not None and _over_alphabets(second, source):
        return UnionClassification(UnionKind.FROM_SECOND, source)
    return UnionClassification(UnionKind.NOT_LIFTED)


def cat_decompose(
    first: Grammar,
    second: Grammar,
    form: SententialForm,
    bounds: SearchBounds,
    oracle: GenerationOracle | None = None,
) -> CatDecomposition | None:
    """Split a concatenation form at the first second-side symbol and find source witnesses."""
    if form == (Nt(FreshStart(OpTag.CAT)),):
        first_root, second_root = (Nt(first.start),), (Nt(second.start),)
        return CatDecomposition(first_root, second_root, Derivation(first_root), Derivation(second_root))
    if Nt(FreshStart(OpTag.CAT)) in form:
        return None

    boundary = next((index for index, symbol in enumerate(form) if is_tagged(CAT_SECOND, symbol)), len(form))
    first_form = unlift_form(CAT_FIRST, form[:boundary])
    second_form = unlift_form(CAT_SECOND, form[boundary:])
    if first_form is None or second_form is None:
        logging.debug(f"No uniform split for [{serialize_form(form)}]")
        return None

    oracle = oracle or GenerationOracle()
    first_witness = oracle.generates(first, first_form, bounds)
    if first_witness is None:
        return None
    second_witness = oracle.generates(second, second_form, bounds)
    if second_witness is None:
        return None
    return CatDecomposition(first_form, second_form, first_witness, second_witness)


def clo_decompose(
    grammar: Grammar,
    form: SententialForm,
    bounds: SearchBounds,
    oracle: GenerationOracle | None = None,
) -> CloDecomposition | None:
    """Split a closure form into a closure-generated prefix and a lifted source-generated tail.

    Tails are tried longest first; the first split whose two witnesses are
    both found is returned.
    """
    if not form:
        return CloDecomposition(CloKind.EMPTY_FORM)
    if form == (Nt(FreshStart(OpTag.CLO)),):
        return CloDecomposition(CloKind.START_FORM)

    oracle = oracle or GenerationOracle()
    closure = kleene(grammar)
    # Only suffixes past the last symbol without a closure wrapper can unlift.
    earliest = len(form)
    while earliest > 0 and is_tagged(CLO, form[earliest - 1]):
        earliest -= 1

    for cut in range(earliest, len(form) + 1):
        prefix = form[:cut]
        tail = unlift_form(CLO, form[cut:])
        if tail is None:
            continue
        tail_witness = oracle.generates(grammar, tail, bounds)
        if tail_witness is None:
            continue
        prefix_witness = oracle.generates(closure, prefix, bounds)
        if prefix_witness is None:
            continue
        return CloDecomposition(CloKind.SPLIT, prefix, tail, prefix_witness, tail_witness)

    logging.debug(f"No closure split verifies for [{serialize_form(form)}]")
    return None
