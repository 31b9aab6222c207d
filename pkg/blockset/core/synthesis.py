"""Conversions between bitmaps and minimal automata.

* :func:`bitmap_to_min_dfa` keys rank-``i`` states by the distinct non-zero
  segments of length ``k**i``; equal quotients collapse, so the result is the
  minimal (trim) DFA.
* :func:`automaton_to_bitmap` walks ranks bottom-up and assigns every state the
  bitmap of its right language.
* :func:`synthesize_min_nfa` covers every segment set with as few bit vectors
  as possible; the cover elements become the NFA states of their rank.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product

from blockset.core.automata import RankedAutomaton, Transition, canonicalize, right_languages
from blockset.core.blockcore import (
    Bitmap,
    SegmentSet,
    is_submask,
    join_blocks,
    segment_sets,
    split_blocks,
)
from blockset.core.config import DEFAULT_BUDGET
from blockset.core.config_validation import validate_solver
from blockset.core.cover import CoverInstance, CoverSolution, solve_cover
from blockset.core.errors import BudgetExceededError, EmptyLanguageError
from blockset.logging_utils import get_logger

LOGGER = get_logger()


def _require_words(bitmap: Bitmap) -> None:
    if bitmap.is_empty():
        raise EmptyLanguageError(f"The bitmap over {bitmap.params} has no words.")


def bitmap_to_min_dfa(bitmap: Bitmap) -> RankedAutomaton:
    """Minimal trim DFA whose rank-``i`` states are the segments of level ``i``."""
    _require_words(bitmap)
    k = bitmap.k
    levels = segment_sets(bitmap)
    ids: list[dict[int, int]] = []
    ranks: list[int] = []
    for level in levels:
        table: dict[int, int] = {}
        for value in level.ordered():
            table[value] = len(ranks)
            ranks.append(level.level)
        ids.append(table)
    transitions: set[Transition] = set()
    for level in levels[1:]:
        child_width = k ** (level.level - 1)
        for value in level.members:
            for symbol, block in enumerate(split_blocks(value, k, child_width)):
                if block:
                    transitions.add(
                        (ids[level.level][value], symbol, ids[level.level - 1][block])
                    )
    automaton = RankedAutomaton(
        params=bitmap.params,
        ranks=tuple(ranks),
        initial=frozenset({ids[bitmap.ell][bitmap.bits]}),
        final=frozenset({ids[0][1]}),
        transitions=frozenset(transitions),
    )
    LOGGER.debug("min DFA widths %s", [len(level) for level in levels])
    return canonicalize(automaton)


def automaton_to_bitmap(automaton: RankedAutomaton) -> Bitmap:
    """Bitmap of the language; successor sets contribute the union of their bitmaps."""
    rights = right_languages(automaton)
    bits = 0
    for state in automaton.initial:
        bits |= rights[state]
    return Bitmap(automaton.params, bits)


def cover_candidates(targets: SegmentSet, lower: SegmentSet, k: int) -> frozenset[int]:
    """Non-zero products of lower segments (or zero blocks) that fit under some target."""
    width = lower.width
    found: set[int] = set()
    for target in targets.members:
        options = [
            [0, *(value for value in lower.members if is_submask(value, block))]
            for block in split_blocks(target, k, width)
        ]
        for blocks in product(*options):
            candidate = join_blocks(blocks, width)
            if candidate:
                found.add(candidate)
    return frozenset(found)


@dataclass(frozen=True)
class NfaSynthesis:
    """A synthesized NFA with the per-rank covers it was built from."""

    automaton: RankedAutomaton
    covers: tuple[CoverSolution, ...]

    @property
    def certified(self) -> bool:
        return all(cover.certified_minimal for cover in self.covers)

    @property
    def num_states(self) -> int:
        return self.automaton.num_states


def _solve_rank(
    instance: CoverInstance,
    solver: str,
    budget: int,
    strict: bool,
) -> CoverSolution:
    return solve_cover(instance, solver=solver, budget=budget, strict=strict)


def synthesize_min_nfa(
    bitmap: Bitmap,
    *,
    solver: str = "exact",
    budget: int = DEFAULT_BUDGET,
    strict: bool = False,
    max_workers: int = 1,
) -> NfaSynthesis:
    """Build the cover-based NFA and report whether every rank cover is certified.

    Rank covers are independent and may be solved concurrently; the result
    does not depend on scheduling.
    """
    _require_words(bitmap)
    validate_solver(solver)
    k = bitmap.k
    levels = segment_sets(bitmap)
    instances = [
        CoverInstance(
            width=levels[i].width,
            targets=levels[i].members,
            candidates=cover_candidates(levels[i], levels[i - 1], k),
        )
        for i in range(1, bitmap.ell + 1)
    ]
    try:
        if max_workers > 1 and len(instances) > 1:
            with ThreadPoolExecutor(max_workers=max_workers) as executor:
                futures = [
                    executor.submit(_solve_rank, inst, solver, budget, strict)
                    for inst in instances
                ]
                solved = [future.result() for future in futures]
        else:
            solved = [_solve_rank(inst, solver, budget, strict) for inst in instances]
    except BudgetExceededError:
        LOGGER.warning("NFA synthesis over %s exceeded the cover budget", bitmap.params)
        raise
    covers = (CoverSolution(width=1, elements=(1,), selection={1: (1,)}, certified_minimal=True),)
    covers += tuple(solved)

    ids: list[dict[int, int]] = []
    ranks: list[int] = []
    for level, cover in enumerate(covers):
        table: dict[int, int] = {}
        for value in cover.elements:
            table[value] = len(ranks)
            ranks.append(level)
        ids.append(table)
    transitions: set[Transition] = set()
    for level in range(1, bitmap.ell + 1):
        child_width = k ** (level - 1)
        selection = covers[level - 1].selection
        for value in covers[level].elements:
            for symbol, block in enumerate(split_blocks(value, k, child_width)):
                if not block:
                    continue
                for element in selection[block]:
                    transitions.add((ids[level][value], symbol, ids[level - 1][element]))
    automaton = RankedAutomaton(
        params=bitmap.params,
        ranks=tuple(ranks),
        initial=frozenset(ids[bitmap.ell].values()),
        final=frozenset({ids[0][1]}),
        transitions=frozenset(transitions),
    )
    result = NfaSynthesis(automaton=canonicalize(automaton), covers=covers)
    LOGGER.debug(
        "min NFA widths %s certified=%s",
        [cover.size for cover in covers],
        result.certified,
    )
    return result


def bitmap_to_min_nfa(
    bitmap: Bitmap,
    solver: str = "exact",
    budget: int = DEFAULT_BUDGET,
    *,
    strict: bool = True,
) -> RankedAutomaton:
    """Minimal NFA from the exact solver; the greedy solver gives an upper bound.

    An exact search that runs past ``budget`` raises BudgetExceededError unless
    ``strict`` is off, in which case the uncertified greedy cover is used. Call
    :func:`synthesize_min_nfa` to inspect the certification flag.
    """
    return synthesize_min_nfa(bitmap, solver=solver, budget=budget, strict=strict).automaton
