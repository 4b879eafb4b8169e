"""Run every property over a corpus of grammars."""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from src.harness.generator import GenParams, random_grammar
from src.harness.reports import CorpusEntry, SuiteSummary, TheoremId, TheoremReport
from src.harness.theorems import CheckOptions, check_theorem
from src.search import SearchBounds
from src.text_format import parse_grammar

CORPUS_SUFFIX = ".cfg"


@dataclass(frozen=True)
class SuiteConfig:
    corpus: tuple[CorpusEntry, ...]
    bounds: SearchBounds
    options: CheckOptions = field(default_factory=CheckOptions)
    theorems: tuple[TheoremId, ...] = tuple(TheoremId)
    jobs: int = 1


def load_corpus(directory: Path) -> tuple[CorpusEntry, ...]:
    """Every ``*.cfg`` file in the directory, named by file stem, in name order."""
    paths = sorted(directory.glob(f"*{CORPUS_SUFFIX}"), key=lambda path: path.name)
    corpus = tuple(CorpusEntry(path.stem, parse_grammar(path.read_text(encoding="utf-8"))) for path in paths)
    logging.info(f"Loaded {len(corpus)} grammars from {directory}")
    return corpus


def random_corpus(count: int, params: GenParams) -> tuple[CorpusEntry, ...]:
    """``count`` random grammars with consecutive seeds starting at ``params.seed``."""
    return tuple(
        CorpusEntry(f"rand{params.seed + index}", random_grammar(params.model_copy(update={"seed": params.seed + index})))
        for index in range(count)
    )


def _tasks(config: SuiteConfig) -> list[tuple[TheoremId, tuple[CorpusEntry, ...]]]:
    tasks: list[tuple[TheoremId, tuple[CorpusEntry, ...]]] = []
    for theorem in config.theorems:
        if theorem.arity == 2:
            tasks.extend((theorem, pair) for pair in itertools.product(config.corpus, repeat=2))
        else:
            tasks.extend((theorem, (entry,)) for entry in config.corpus)
    return tasks


def _run_task(task: tuple[TheoremId, tuple[CorpusEntry, ...]], bounds: SearchBounds, options: CheckOptions) -> TheoremReport:
    theorem, inputs = task
    return check_theorem(theorem, inputs, bounds, options)


def run_suite(config: SuiteConfig) -> SuiteSummary:
    """All requested properties over the corpus (ordered pairs for binary ones), sorted by id then inputs."""
    tasks = _tasks(config)
    logging.info(f"Running {len(tasks)} checks over {len(config.corpus)} grammars")
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(
                pool.map(_run_task, tasks, itertools.repeat(config.bounds), itertools.repeat(config.options))
            )
    else:
        reports = [_run_task(task, config.bounds, config.options) for task in tasks]
    reports.sort(key=lambda report: report.sort_key)
    summary = SuiteSummary(reports)
    logging.info(
        f"Suite finished: {len(reports)} reports, {len(summary.failed)} failed, {len(summary.inconclusive)} inconclusive"
    )
    return summary
