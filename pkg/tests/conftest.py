"""Shared test fixtures: the fixed grammar corpus shipped in fixtures/.

Grammars are loaded through the real text parser, so every test that uses a
corpus grammar also exercises parse_grammar on a canonical file.
"""

from pathlib import Path

import pytest

from src.derivation import Derivation, Step
from src.grammar import Grammar
from src.harness.reports import CorpusEntry
from src.symbols import parse_form
from src.text_format import parse_grammar

FIXTURES_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# File stems in name order, matching load_corpus.
CORPUS_NAMES = ("g_a", "g_ab", "g_amb", "g_b", "g_eps", "g_two")


def _load(name: str) -> Grammar:
    return parse_grammar((FIXTURES_DIR / f"{name}.cfg").read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture(scope="session")
def corpus() -> dict[str, Grammar]:
    """Every fixture grammar by name."""
    return {name: _load(name) for name in CORPUS_NAMES}


@pytest.fixture(scope="session")
def corpus_entries(corpus) -> tuple[CorpusEntry, ...]:
    return tuple(CorpusEntry(name, grammar) for name, grammar in corpus.items())


@pytest.fixture
def g_a(corpus) -> Grammar:
    return corpus["g_a"]


@pytest.fixture
def g_b(corpus) -> Grammar:
    return corpus["g_b"]


@pytest.fixture
def g_ab(corpus) -> Grammar:
    return corpus["g_ab"]


@pytest.fixture
def g_amb(corpus) -> Grammar:
    return corpus["g_amb"]


@pytest.fixture
def g_eps(corpus) -> Grammar:
    return corpus["g_eps"]


@pytest.fixture
def g_two(corpus) -> Grammar:
    return corpus["g_two"]


@pytest.fixture
def d_ab() -> Derivation:
    """The 2-step G_ab certificate S => 'a' S 'b' => 'a' 'b'."""
    return Derivation(parse_form("S"), (Step(0, 0), Step(1, 1)))
