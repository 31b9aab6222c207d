"""Seeded property checks over randomly sampled bitmaps."""

from __future__ import annotations

import random
from collections.abc import Callable
from dataclasses import dataclass, field
from typing import Any

from blockset.core.automata import equivalent, minimize_dfa
from blockset.core.blockcore import Bitmap, BlockParams
from blockset.core.bounds import (
    bitmap_dsc,
    campeanu_ho_bound,
    dsc_of_reversal,
    nfa_max_size,
    nsc,
)
from blockset.core.config import DEFAULT_BUDGET, DEFAULT_SEED
from blockset.core.config_validation import require_positive_int
from blockset.core.langops import (
    bm_and,
    bm_not,
    bm_or,
    concat_bitmaps,
    plus_automaton,
    reverse_bitmap,
    reverse_by_index,
    star_automaton,
)
from blockset.core.synthesis import (
    automaton_to_bitmap,
    bitmap_to_min_dfa,
    synthesize_min_nfa,
)
from blockset.logging_utils import get_logger

LOGGER = get_logger()

SAMPLE_SHAPES = ((2, 1), (2, 2), (2, 3), (2, 4), (3, 2), (3, 3))
_FAILURE_SAMPLE_LIMIT = 5


@dataclass(frozen=True)
class SelftestCheck:
    name: str
    samples: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "samples": self.samples,
            "passed": self.passed,
            "failures": self.failures[:_FAILURE_SAMPLE_LIMIT],
        }


@dataclass(frozen=True)
class SelftestReport:
    seed: int
    checks: list[SelftestCheck]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "seed": self.seed,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


def sample_bitmap(rng: random.Random, *, non_empty: bool = True) -> Bitmap:
    k, ell = rng.choice(SAMPLE_SHAPES)
    params = BlockParams(k, ell)
    bits = rng.getrandbits(params.universe_size)
    if non_empty and not bits:
        bits = 1 << rng.randrange(params.universe_size)
    return Bitmap(params, bits)


def _round_trips(bitmap: Bitmap, solver: str, budget: int) -> str | None:
    if automaton_to_bitmap(bitmap_to_min_dfa(bitmap)) != bitmap:
        return "DFA round trip"
    nfa = synthesize_min_nfa(bitmap, solver=solver, budget=budget).automaton
    if automaton_to_bitmap(nfa) != bitmap:
        return "NFA round trip"
    if not equivalent(bitmap_to_min_dfa(bitmap), nfa):
        return "DFA and NFA languages differ"
    return None


def _envelope(bitmap: Bitmap, solver: str, budget: int) -> str | None:
    dsc_value = bitmap_dsc(bitmap)
    nsc_value = nsc(bitmap, solver=solver, budget=budget)
    if bitmap.k >= 2 and dsc_value > campeanu_ho_bound(bitmap.k, bitmap.ell)[0]:
        return f"dsc {dsc_value} above the maximal DFA size"
    if not nsc_value.certified:
        return None
    if bitmap.k >= 2 and nsc_value.value > nfa_max_size(bitmap.k, bitmap.ell):
        return f"nsc {nsc_value.value} above the maximal NFA size"
    if nsc_value.value > dsc_value - 1:
        return f"nsc {nsc_value.value} above dsc - 1 = {dsc_value - 1}"
    return None


def _reversal(bitmap: Bitmap, _solver: str, _budget: int) -> str | None:
    reversed_bitmap = reverse_bitmap(bitmap)
    if reversed_bitmap != reverse_by_index(bitmap):
        return "shuffle reversal differs from the index oracle"
    if reverse_bitmap(reversed_bitmap) != bitmap:
        return "reversal is not an involution"
    if dsc_of_reversal(bitmap) != bitmap_dsc(reversed_bitmap):
        return "reversed automaton and reversed bitmap disagree"
    return None


def _de_morgan(bitmap: Bitmap, _solver: str, _budget: int) -> str | None:
    other = Bitmap(bitmap.params, bitmap.bits ^ (bitmap.bits >> 1))
    if bm_not(bm_and(bitmap, other)) != bm_or(bm_not(bitmap), bm_not(other)):
        return "De Morgan law fails"
    return None


def _concatenation(bitmap: Bitmap, _solver: str, _budget: int) -> str | None:
    tail = Bitmap(BlockParams(bitmap.k, 1), 1)
    expected = bitmap_dsc(bitmap) + bitmap_dsc(tail) - 2
    observed = bitmap_dsc(concat_bitmaps(bitmap, tail))
    if observed != expected:
        return f"concatenation dsc {observed}, expected {expected}"
    return None


def _star_plus(bitmap: Bitmap, _solver: str, _budget: int) -> str | None:
    if bitmap.is_full():
        return None
    minimal = bitmap_to_min_dfa(bitmap)
    m = bitmap_dsc(bitmap)
    star = minimize_dfa(star_automaton(minimal)).num_states
    plus = minimize_dfa(plus_automaton(minimal)).num_states
    if (star, plus) != (m - 1, m):
        return f"star/plus sizes {star}/{plus}, expected {m - 1}/{m}"
    return None


Check = Callable[[Bitmap, str, int], str | None]

CHECKS: dict[str, Check] = {
    "round-trip": _round_trips,
    "bound-envelope": _envelope,
    "reversal": _reversal,
    "de-morgan": _de_morgan,
    "concatenation": _concatenation,
    "star-plus": _star_plus,
}


def run_selftest(
    *,
    seed: int = DEFAULT_SEED,
    samples: int = 50,
    solver: str = "exact",
    budget: int = DEFAULT_BUDGET,
) -> SelftestReport:
    """Run every check on the same seeded sample of bitmaps."""
    require_positive_int(samples, "samples")
    rng = random.Random(seed)  # noqa: S311
    bitmaps = [sample_bitmap(rng) for _ in range(samples)]
    results: list[SelftestCheck] = []
    for name, check in CHECKS.items():
        failures: list[str] = []
        for bitmap in bitmaps:
            problem = check(bitmap, solver, budget)
            if problem is not None:
                failures.append(f"{bitmap.params} {bitmap.to_string()}: {problem}")
        if failures:
            LOGGER.warning("selftest %s failed on %d bitmaps", name, len(failures))
        results.append(SelftestCheck(name=name, samples=len(bitmaps), failures=failures))
    return SelftestReport(seed=seed, checks=results)
