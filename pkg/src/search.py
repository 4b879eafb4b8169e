"""Bounded breadth-first search over sentential forms.

Search is exhaustive inside its bounds: ``max_steps`` limits derivation
length and forms longer than ``max_len`` are pruned (empty rules make length
non-monotone, so the pruning bound is always explicit). Successors are
generated by position ascending, then rule id ascending, and every form keeps
the first (hence minimal) derivation that reached it.

An absent result means "refuted within bounds". Exploring more than
``form_cap`` distinct forms raises BudgetExceeded instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterator

from src.derivation import Derivation, Step
from src.errors import BudgetExceeded, InvalidInput
from src.grammar import Grammar
from src.symbols import Nt, SententialForm, form_sort_key, is_sentence, serialize_form

DEFAULT_FORM_CAP = 1_000_000


@dataclass(frozen=True, slots=True)
class SearchBounds:
    max_steps: int
    max_len: int
    form_cap: int = DEFAULT_FORM_CAP

    def __post_init__(self) -> None:
        if self.max_steps < 0:
            raise InvalidInput(f"max_steps must be >= 0, got {self.max_steps}")
        if self.max_len < 0:
            raise InvalidInput(f"max_len must be >= 0, got {self.max_len}")
        if self.form_cap < 1:
            raise InvalidInput(f"form_cap must be >= 1, got {self.form_cap}")


@dataclass
class Exploration:
    """Breadth-first tree: every reached form with its parent and depth."""

    grammar: Grammar
    root: SententialForm
    parents: dict[SententialForm, tuple[SententialForm, Step] | None] = field(default_factory=dict)
    depths: dict[SententialForm, int] = field(default_factory=dict)

    def derivation_to(self, form: SententialForm) -> Derivation | None:
        if form not in self.parents:
            return None
        steps: list[Step] = []
        current = form
        while (link := self.parents[current]) is not None:
            current, step = link
            steps.append(step)
        steps.reverse()
        return Derivation(self.root, tuple(steps))

    def forms(self) -> list[tuple[SententialForm, int]]:
        """Every reached form with its minimal step count, in shortlex order."""
        return sorted(self.depths.items(), key=lambda item: form_sort_key(item[0]))


def _successors(grammar: Grammar, form: SententialForm) -> Iterator[tuple[Step, SententialForm]]:
    for pos, symbol in enumerate(form):
        if not isinstance(symbol, Nt):
            continue
        for rule in grammar.rules_by_lhs.get(symbol.name, ()):
            yield Step(pos, rule.id), form[:pos] + rule.rhs + form[pos + 1:]


def _breadth_first(grammar: Grammar, root: SententialForm, bounds: SearchBounds) -> Iterator[Exploration]:
    """Grow the exploration one form at a time, yielding after each new form."""
    tree = Exploration(grammar, root)
    tree.parents[root] = None
    tree.depths[root] = 0
    yield tree
    frontier = [root]
    for depth in range(1, bounds.max_steps + 1):
        next_frontier: list[SententialForm] = []
        for form in frontier:
            for step, child in _successors(grammar, form):
                if len(child) > bounds.max_len or child in tree.parents:
                    continue
                tree.parents[child] = (form, step)
                tree.depths[child] = depth
                if len(tree.parents) > bounds.form_cap:
                    logging.warning(f"Search budget exhausted after {len(tree.parents)} forms")
                    raise BudgetExceeded(len(tree.parents), bounds.form_cap)
                next_frontier.append(child)
                yield tree
        if not next_frontier:
            break
        frontier = next_frontier


def explore(grammar: Grammar, root: SententialForm, bounds: SearchBounds) -> Exploration:
    """Run the bounded search to exhaustion."""
    if len(root) > bounds.max_len:
        raise InvalidInput(f"start form is longer than max_len={bounds.max_len}")
    tree: Exploration | None = None
    for tree in _breadth_first(grammar, root, bounds):
        pass
    assert tree is not None
    logging.debug(f"Explored {len(tree.parents)} forms from [{serialize_form(root)}]")
    return tree


def derive_search(
    grammar: Grammar,
    from_form: SententialForm,
    to_form: SententialForm,
    max_steps: int,
    max_len: int,
    form_cap: int = DEFAULT_FORM_CAP,
) -> Derivation | None:
    """A minimal derivation from ``from_form`` to ``to_form`` within the bounds, or None."""
    bounds = SearchBounds(max_steps, max_len, form_cap)
    if max_len < max(len(from_form), len(to_form)):
        raise InvalidInput(f"max_len={max_len} is shorter than the forms being searched")
    tree: Exploration | None = None
    for tree in _breadth_first(grammar, from_form, bounds):
        if to_form in tree.parents:
            return tree.derivation_to(to_form)
    return None


def generates(
    grammar: Grammar,
    form: SententialForm,
    max_steps: int,
    max_len: int,
    form_cap: int = DEFAULT_FORM_CAP,
) -> Derivation | None:
    """Search for a derivation of ``form`` from the start symbol alone."""
    return derive_search(grammar, (Nt(grammar.start),), form, max_steps, max_len, form_cap)


def enumerate_forms(
    grammar: Grammar,
    max_steps: int,
    max_len: int,
    form_cap: int = DEFAULT_FORM_CAP,
) -> list[tuple[SententialForm, int]]:
    """Every form derivable from the start symbol within bounds, with its minimal step count."""
    if max_len < 1:
        raise InvalidInput("max_len must be >= 1 to hold the start symbol")
    return explore(grammar, (Nt(grammar.start),), SearchBounds(max_steps, max_len, form_cap)).forms()


def enumerate_minimal_derivations(
    grammar: Grammar,
    max_steps: int,
    max_len: int,
    form_cap: int = DEFAULT_FORM_CAP,
) -> list[tuple[SententialForm, Derivation]]:
    """Every enumerated form paired with its minimal certificate from the start symbol."""
    tree = explore(grammar, (Nt(grammar.start),), SearchBounds(max_steps, max_len, form_cap))
    results = []
    for form, _ in tree.forms():
        derivation = tree.derivation_to(form)
        assert derivation is not None
        results.append((form, derivation))
    return results


def sentences(
    grammar: Grammar,
    max_steps: int,
    max_len: int,
    form_cap: int = DEFAULT_FORM_CAP,
) -> list[SententialForm]:
    """The terminal-only forms among enumerate_forms, in shortlex order."""
    return [form for form, _ in enumerate_forms(grammar, max_steps, max_len, form_cap) if is_sentence(form)]


class GenerationOracle:
    """Memoised ``generates``: one exploration per (grammar, bounds).

    Answers are the same minimal certificates derive_search returns, because
    both walk the same breadth-first order.
    """

    def __init__(self) -> None:
        self._explorations: dict[tuple[Grammar, SearchBounds], Exploration] = {}

    def generates(self, grammar: Grammar, form: SententialForm, bounds: SearchBounds) -> Derivation | None:
        if len(form) > bounds.max_len:
            return None
        key = (grammar, bounds)
        tree = self._explorations.get(key)
        if tree is None:
            tree = explore(grammar, (Nt(grammar.start),), bounds)
            self._explorations[key] = tree
        return tree.derivation_to(form)
