"""Each closure property and derivation lemma as a bounded, exhaustive check.

Direct properties enumerate the minimal certificate of every source form
within the bounds, build the constructed-grammar witness and re-check it.
Inverse properties enumerate every form of the constructed grammar within
the bounds and require it to classify or decompose into source-generated
parts. The lemmas chain and embed enumerated certificates.

A check stops at its first failing case; cases are visited in shortlex
order of forms, so the reported counterexample is the first failing form.
"""

from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from src.constructions import CAT_FIRST, CAT_SECOND, CLO, LiftSpec, concat, kleene, lift_form, union
from src.decompose import CloKind, UnionKind, cat_decompose, clo_decompose, union_classify
from src.derivation import Derivation, check_derivation, compose_derivations, embed_derivation
from src.errors import BudgetExceeded, GrammarAlgebraError
from src.grammar import Grammar
from src.harness.mutants import MUTANTS
from src.harness.reports import CorpusEntry, Counterexample, Outcome, TheoremId, TheoremReport
from src.search import GenerationOracle, SearchBounds, enumerate_forms, enumerate_minimal_derivations, explore
from src.symbols import Nt, OpTag, SententialForm, SideTag, T, serialize_form, sort_forms
from src.witnesses import cat_witness, clo_witness, union_witness

_CONSTRUCTIONS: dict[OpTag, Callable[..., Grammar]] = {OpTag.UNION: union, OpTag.CAT: concat, OpTag.CLO: kleene}
_THEOREM_OP = {
    TheoremId.UNI_CORRECT: OpTag.UNION,
    TheoremId.UNI_CORRECT_INV: OpTag.UNION,
    TheoremId.CAT_CORRECT: OpTag.CAT,
    TheoremId.CAT_CORRECT_INV: OpTag.CAT,
    TheoremId.CLO_CORRECT: OpTag.CLO,
    TheoremId.CLO_CORRECT_INV: OpTag.CLO,
}


@dataclass(frozen=True)
class CheckOptions:
    clo_max_segments: int = 3
    clo_segment_pool: int | None = None
    seed: int = 0
    mutant: str | None = None


class _Failure(Exception):
    """Internal: carries the first failing case out of a check loop."""

    def __init__(self, form: SententialForm, reason: str, certificate: Derivation | None = None):
        super().__init__(reason)
        self.form = form
        self.reason = reason
        self.certificate = certificate


def _require(condition: bool, form: SententialForm, reason: str, certificate: Derivation | None = None) -> None:
    if not condition:
        raise _Failure(form, reason, certificate)


def _check_certificate(
    grammar: Grammar,
    certificate: Derivation,
    expected: SententialForm,
    expected_steps: int | None,
    case_form: SententialForm,
) -> None:
    """The certificate must be accepted, end in ``expected`` and have exactly ``expected_steps`` steps."""
    result = check_derivation(grammar, certificate)
    _require(result.accepted, case_form, f"certificate rejected at step {result.failed_step}: {result.reason}", certificate)
    _require(
        result.final == expected,
        case_form,
        f"certificate ends in [{serialize_form(result.final or ())}], expected [{serialize_form(expected)}]",
        certificate,
    )
    if expected_steps is not None:
        _require(
            certificate.step_count == expected_steps,
            case_form,
            f"certificate has {certificate.step_count} steps, expected {expected_steps}",
            certificate,
        )


def _construction(theorem: TheoremId, options: CheckOptions) -> Callable[..., Grammar]:
    op = _THEOREM_OP[theorem]
    if options.mutant is not None:
        mutant = MUTANTS[options.mutant]
        if _THEOREM_OP[mutant.theorem] == op:
            return mutant.build
    return _CONSTRUCTIONS[op]


# --- Direct properties --------------------------------------------------------


def _uni_correct(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    first, second = grammars
    constructed = _construction(TheoremId.UNI_CORRECT, options)(first, second)
    for side, source in ((SideTag.FIRST, first), (SideTag.SECOND, second)):
        spec = LiftSpec(OpTag.UNION, side)
        for form, derivation in enumerate_minimal_derivations(source, bounds.max_steps, bounds.max_len, bounds.form_cap):
            yield form
            witness = union_witness(first, second, side, derivation)
            _check_certificate(constructed, witness, lift_form(spec, form), derivation.step_count + 1, form)


def _cat_correct(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    first, second = grammars
    constructed = _construction(TheoremId.CAT_CORRECT, options)(first, second)
    firsts = enumerate_minimal_derivations(first, bounds.max_steps, bounds.max_len, bounds.form_cap)
    seconds = enumerate_minimal_derivations(second, bounds.max_steps, bounds.max_len, bounds.form_cap)
    for (form1, derivation1), (form2, derivation2) in itertools.product(firsts, seconds):
        expected = lift_form(CAT_FIRST, form1) + lift_form(CAT_SECOND, form2)
        yield expected
        witness = cat_witness(first, second, derivation1, derivation2)
        _check_certificate(constructed, witness, expected, derivation1.step_count + derivation2.step_count + 1, expected)


def _clo_correct(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    (grammar,) = grammars
    constructed = _construction(TheoremId.CLO_CORRECT, options)(grammar)
    segments = enumerate_minimal_derivations(grammar, bounds.max_steps, bounds.max_len, bounds.form_cap)
    pool = segments if options.clo_segment_pool is None else segments[: options.clo_segment_pool]

    def tuples() -> Iterator[Sequence[tuple[SententialForm, Derivation]]]:
        yield ()
        for segment in segments:
            yield (segment,)
        for count in range(2, options.clo_max_segments + 1):
            yield from itertools.product(pool, repeat=count)

    for chosen in tuples():
        derivations = [derivation for _, derivation in chosen]
        expected: SententialForm = ()
        for form, _ in chosen:
            expected += lift_form(CLO, form)
        yield expected
        witness = clo_witness(grammar, derivations)
        steps = sum(derivation.step_count for derivation in derivations) + len(derivations) + 1
        _check_certificate(constructed, witness, expected, steps, expected)


# --- Inverse properties -------------------------------------------------------


def _source_bounds(bounds: SearchBounds, steps: int) -> SearchBounds:
    return SearchBounds(max(steps, 0), bounds.max_len, bounds.form_cap)


def _uni_correct_inv(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    first, second = grammars
    constructed = _construction(TheoremId.UNI_CORRECT_INV, options)(first, second)
    oracle = GenerationOracle()
    source_bounds = _source_bounds(bounds, bounds.max_steps - 1)
    for form, depth in enumerate_forms(constructed, bounds.max_steps, bounds.max_len, bounds.form_cap):
        yield form
        classification = union_classify(first, second, form)
        _require(classification.kind is not UnionKind.NOT_LIFTED, form, "form is not the lift of a source form")
        if classification.kind is UnionKind.START_FORM:
            continue
        source_form = classification.source_form or ()
        if classification.kind is UnionKind.FROM_FIRST:
            candidates = [first, second] if not source_form else [first]
        else:
            candidates = [second]
        found: list[tuple[Grammar, Derivation]] = []
        for candidate in candidates:
            certificate = oracle.generates(candidate, source_form, source_bounds)
            if certificate is not None:
                found.append((candidate, certificate))
        _require(bool(found), form, f"{classification} is not generated by its source within {source_bounds.max_steps} steps")
        # The empty form may come from either side; the shorter certificate bounds the depth.
        source, witness = min(found, key=lambda item: item[1].step_count)
        _check_certificate(source, witness, source_form, None, form)
        _require(witness.step_count <= depth - 1, form, f"source witness needs {witness.step_count} steps, form has depth {depth}")


def _cat_correct_inv(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    first, second = grammars
    constructed = _construction(TheoremId.CAT_CORRECT_INV, options)(first, second)
    oracle = GenerationOracle()
    source_bounds = _source_bounds(bounds, bounds.max_steps - 1)
    for form, depth in enumerate_forms(constructed, bounds.max_steps, bounds.max_len, bounds.form_cap):
        yield form
        decomposition = cat_decompose(first, second, form, source_bounds, oracle)
        _require(decomposition is not None, form, "no split into source-generated parts")
        assert decomposition is not None
        _check_certificate(first, decomposition.first_witness, decomposition.first, None, form)
        _check_certificate(second, decomposition.second_witness, decomposition.second, None, form)
        total = decomposition.first_witness.step_count + decomposition.second_witness.step_count
        _require(depth == 0 or total <= depth - 1, form, f"source witnesses need {total} steps, form has depth {depth}")


def _clo_correct_inv(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    (grammar,) = grammars
    constructed = _construction(TheoremId.CLO_CORRECT_INV, options)(grammar)
    closure = kleene(grammar)
    oracle = GenerationOracle()
    for form, _ in enumerate_forms(constructed, bounds.max_steps, bounds.max_len, bounds.form_cap):
        yield form
        decomposition = clo_decompose(grammar, form, bounds, oracle)
        _require(decomposition is not None, form, "no split into a closure prefix and a source-generated tail")
        assert decomposition is not None
        if decomposition.kind is CloKind.SPLIT:
            assert decomposition.prefix is not None and decomposition.tail is not None
            assert decomposition.prefix_witness is not None and decomposition.tail_witness is not None
            _check_certificate(closure, decomposition.prefix_witness, decomposition.prefix, None, form)
            _check_certificate(grammar, decomposition.tail_witness, decomposition.tail, None, form)
            _require(decomposition.prefix + lift_form(CLO, decomposition.tail) == form, form, "split does not reassemble the form")


# --- Lemmas -------------------------------------------------------------------


def _derives_trans(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    (grammar,) = grammars
    for form, first in enumerate_minimal_derivations(grammar, bounds.max_steps, bounds.max_len, bounds.form_cap):
        remaining = SearchBounds(bounds.max_steps - first.step_count, bounds.max_len, bounds.form_cap)
        continuation = explore(grammar, form, remaining)
        for target, _ in continuation.forms():
            yield target
            second = continuation.derivation_to(target)
            assert second is not None
            composed = compose_derivations(grammar, first, second)
            _check_certificate(grammar, composed, target, first.step_count + second.step_count, target)


def _contexts(grammar: Grammar) -> list[SententialForm]:
    symbols = [Nt(name) for name in grammar.nonterminals] + [T(name) for name in grammar.terminals]
    return [()] + sort_forms((symbol,) for symbol in symbols)


def _derives_context_free_add(grammars: Sequence[Grammar], bounds: SearchBounds, options: CheckOptions) -> Iterator[SententialForm]:
    (grammar,) = grammars
    contexts = _contexts(grammar)
    for form, derivation in enumerate_minimal_derivations(grammar, bounds.max_steps, bounds.max_len, bounds.form_cap):
        for left, right in itertools.product(contexts, contexts):
            yield left + form + right
            embedded = embed_derivation(grammar, derivation, left, right)
            _check_certificate(grammar, embedded, left + form + right, derivation.step_count, left + form + right)


_CHECKS = {
    TheoremId.UNI_CORRECT: _uni_correct,
    TheoremId.UNI_CORRECT_INV: _uni_correct_inv,
    TheoremId.CAT_CORRECT: _cat_correct,
    TheoremId.CAT_CORRECT_INV: _cat_correct_inv,
    TheoremId.CLO_CORRECT: _clo_correct,
    TheoremId.CLO_CORRECT_INV: _clo_correct_inv,
    TheoremId.DERIVES_TRANS: _derives_trans,
    TheoremId.DERIVES_CONTEXT_FREE_ADD: _derives_context_free_add,
}


def check_theorem(
    theorem: TheoremId,
    inputs: Sequence[CorpusEntry],
    bounds: SearchBounds,
    options: CheckOptions | None = None,
) -> TheoremReport:
    """Run one property over one input tuple. Never raises for a failing or exhausted check."""
    options = options or CheckOptions()
    inputs = tuple(inputs)
    if len(inputs) != theorem.arity:
        raise ValueError(f"{theorem.value} takes {theorem.arity} grammar(s), got {len(inputs)}")

    report = functools.partial(
        TheoremReport, theorem=theorem, inputs=inputs, bounds=bounds, seed=options.seed, mutant=options.mutant
    )
    # Each check yields a case form before checking it, so the last one started is the one in progress.
    started = 0
    current: SententialForm = ()
    try:
        for current in _CHECKS[theorem]([entry.grammar for entry in inputs], bounds, options):
            started += 1
    except _Failure as failure:
        logging.warning(f"{theorem.value} failed on {','.join(e.name for e in inputs)}: {failure.reason}")
        counterexample = Counterexample(inputs, failure.form, failure.reason, failure.certificate)
        return report(outcome=Outcome.FAIL, cases=started - 1, counterexample=counterexample)
    except BudgetExceeded as error:
        return report(outcome=Outcome.INCONCLUSIVE, cases=max(started - 1, 0), detail=str(error))
    except GrammarAlgebraError as error:
        # A witness builder or decomposer refusing its input is a failure of the property.
        counterexample = Counterexample(inputs, current, f"{type(error).__name__}: {error}")
        return report(outcome=Outcome.FAIL, cases=max(started - 1, 0), counterexample=counterexample)

    logging.info(f"{theorem.value} {','.join(e.name for e in inputs)}: PASS({started})")
    return report(outcome=Outcome.PASS, cases=started)
