"""Theorem check reports, their one-line text form and counterexample files."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path

from src.derivation import Derivation
from src.grammar import Grammar
from src.search import SearchBounds
from src.symbols import SententialForm, serialize_form
from src.text_format import serialize_certificate, serialize_grammar

GENERATOR_ID = "python-random-mt19937"


class TheoremId(str, Enum):
    UNI_CORRECT = "uni_correct"
    UNI_CORRECT_INV = "uni_correct_inv"
    CAT_CORRECT = "cat_correct"
    CAT_CORRECT_INV = "cat_correct_inv"
    CLO_CORRECT = "clo_correct"
    CLO_CORRECT_INV = "clo_correct_inv"
    DERIVES_TRANS = "derives_trans"
    DERIVES_CONTEXT_FREE_ADD = "derives_context_free_add"

    @property
    def arity(self) -> int:
        return 2 if self.value.startswith(("uni_", "cat_")) else 1


THEOREM_ORDER = {theorem: index for index, theorem in enumerate(TheoremId)}


class Outcome(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    grammar: Grammar


@dataclass(frozen=True)
class Counterexample:
    """Everything needed to replay a failure: the inputs, the form and why it failed."""

    grammars: tuple[CorpusEntry, ...]
    form: SententialForm
    reason: str
    certificate: Derivation | None = None


@dataclass(frozen=True)
class TheoremReport:
    theorem: TheoremId
    inputs: tuple[CorpusEntry, ...]
    bounds: SearchBounds
    outcome: Outcome
    cases: int = 0
    counterexample: Counterexample | None = None
    detail: str = ""
    seed: int = 0
    generator: str = GENERATOR_ID
    mutant: str | None = None

    @property
    def input_names(self) -> str:
        return ",".join(entry.name for entry in self.inputs)

    @property
    def sort_key(self) -> tuple[int, str]:
        return THEOREM_ORDER[self.theorem], self.input_names

    def line(self) -> str:
        """``<theoremId> <inputs> <bounds> PASS(<n>)|FAIL(<detail>)|INCONCLUSIVE(<detail>)``."""
        bounds = f"steps={self.bounds.max_steps},len={self.bounds.max_len},cap={self.bounds.form_cap},seed={self.seed},gen={self.generator}"
        if self.mutant:
            bounds += f",mutant={self.mutant}"
        if self.outcome is Outcome.PASS:
            result = f"PASS({self.cases})"
        elif self.counterexample is not None:
            result = f"FAIL(form=[{serialize_form(self.counterexample.form)}] {self.counterexample.reason})"
        else:
            result = f"{self.outcome.value}({self.detail})"
        return f"{self.theorem.value} {self.input_names} {bounds} {result}"


@dataclass
class SuiteSummary:
    reports: list[TheoremReport] = field(default_factory=list)

    @property
    def failed(self) -> list[TheoremReport]:
        return [report for report in self.reports if report.outcome is Outcome.FAIL]

    @property
    def inconclusive(self) -> list[TheoremReport]:
        return [report for report in self.reports if report.outcome is Outcome.INCONCLUSIVE]

    @property
    def ok(self) -> bool:
        return not self.failed

    def text(self) -> str:
        return "".join(report.line() + "\n" for report in self.reports)


def write_counterexample(report: TheoremReport, directory: Path) -> Path:
    """Write the failing inputs in the grammar/certificate formats under ``directory``."""
    if report.counterexample is None:
        raise ValueError("report carries no counterexample")
    target = directory / f"{report.theorem.value}__{report.input_names.replace(',', '__')}"
    target.mkdir(parents=True, exist_ok=True)
    for index, entry in enumerate(report.counterexample.grammars, start=1):
        (target / f"g{index}_{entry.name}.cfg").write_text(serialize_grammar(entry.grammar), encoding="utf-8")
    (target / "form.txt").write_text(serialize_form(report.counterexample.form) + "\n", encoding="utf-8")
    (target / "reason.txt").write_text(report.line() + "\n", encoding="utf-8")
    if report.counterexample.certificate is not None:
        (target / "witness.cert").write_text(serialize_certificate(report.counterexample.certificate), encoding="utf-8")
    return target
