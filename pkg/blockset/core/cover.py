"""Minimal covers of bit vectors under bitwise disjunction (the set-basis problem).

A set ``C`` covers a target ``t`` when the union of the members of ``C`` that
are submasks of ``t`` equals ``t``. The exact solver deepens the cover size
from a counting lower bound up to the greedy size and branches, at every
node, on the uncovered bit with the fewest candidates able to supply it.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field, replace
from itertools import combinations
from typing import Any

from blockset.core.blockcore import bits_to_string, canonical_key, is_submask, string_to_bits
from blockset.core.config import DEFAULT_BUDGET
from blockset.core.errors import (
    BudgetExceededError,
    InfeasibleCoverError,
    WidthMismatchError,
)
from blockset.logging_utils import get_logger

LOGGER = get_logger()

_EXACT_SELECTION_LIMIT = 20


def _check_width(values: Iterable[int], width: int) -> None:
    for value in values:
        if value < 0 or value >> width:
            raise WidthMismatchError(f"Bit vector {value:#x} does not fit in width {width}.")


@dataclass(frozen=True)
class CoverInstance:
    """Targets to reconstruct and the bit vectors allowed as cover elements."""

    width: int
    targets: frozenset[int]
    candidates: frozenset[int]

    def __post_init__(self) -> None:
        if self.width < 1:
            raise ValueError("width must be greater than zero.")
        _check_width(self.targets | self.candidates, self.width)
        if 0 in self.targets or 0 in self.candidates:
            raise ValueError("Targets and candidates must be non-zero.")

    @classmethod
    def from_strings(cls, targets: Iterable[str], candidates: Iterable[str]) -> CoverInstance:
        target_list = list(targets)
        candidate_list = list(candidates)
        widths = {len(text) for text in target_list + candidate_list}
        if len(widths) > 1:
            raise WidthMismatchError(f"Mixed bit-vector widths {sorted(widths)}.")
        width = widths.pop() if widths else 1
        return cls(
            width=width,
            targets=frozenset(string_to_bits(text) for text in target_list),
            candidates=frozenset(string_to_bits(text) for text in candidate_list),
        )

    def ordered(self, values: Iterable[int]) -> list[int]:
        return sorted(values, key=lambda value: canonical_key(value, self.width))

    def render(self, value: int) -> str:
        return bits_to_string(value, self.width)


@dataclass(frozen=True)
class CoverSolution:
    """Chosen elements plus, per target, the subset whose union rebuilds it."""

    width: int
    elements: tuple[int, ...]
    selection: dict[int, tuple[int, ...]] = field(default_factory=dict)
    certified_minimal: bool = False
    nodes: int = 0

    @property
    def size(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict[str, Any]:
        """Serialize the solution with bit strings as JSON-ready dict."""
        def render(value: int) -> str:
            return bits_to_string(value, self.width)

        return {
            "width": self.width,
            "size": self.size,
            "certified_minimal": self.certified_minimal,
            "nodes": self.nodes,
            "elements": [render(value) for value in self.elements],
            "selection": {
                render(target): [render(value) for value in chosen]
                for target, chosen in sorted(self.selection.items())
            },
        }


def is_cover(elements: Iterable[int], target: int, width: int) -> bool:
    """Whether some subset of ``elements`` has union ``target``."""
    values = list(elements)
    _check_width([*values, target], width)
    union = 0
    for value in values:
        if is_submask(value, target):
            union |= value
    return union == target


def select_subset(ordered_elements: Sequence[int], target: int) -> tuple[int, ...] | None:
    """Smallest subset with union ``target``, lexicographically least in element order.

    Targets with many submask elements fall back to an irredundant subset built
    in element order.
    """
    submasks = [value for value in ordered_elements if is_submask(value, target)]
    union = 0
    for value in submasks:
        union |= value
    if union != target:
        return None
    if len(submasks) <= _EXACT_SELECTION_LIMIT:
        for size in range(1, len(submasks) + 1):
            for subset in combinations(submasks, size):
                combined = 0
                for value in subset:
                    combined |= value
                if combined == target:
                    return subset
    chosen: list[int] = []
    covered = 0
    for value in submasks:
        if value & ~covered:
            chosen.append(value)
            covered |= value
    for value in reversed(list(chosen)):
        rest = 0
        for other in chosen:
            if other != value:
                rest |= other
        if rest == target:
            chosen.remove(value)
    return tuple(chosen)


def _check_feasible(instance: CoverInstance) -> None:
    for target in instance.targets:
        if not is_cover(instance.candidates, target, instance.width):
            raise InfeasibleCoverError(
                f"Target {instance.render(target)} is not a union of candidate submasks."
            )


def build_solution(
    instance: CoverInstance,
    chosen: Iterable[int],
    *,
    certified: bool,
    nodes: int = 0,
) -> CoverSolution:
    """Attach canonical selections to a set of chosen elements."""
    ordered = instance.ordered(set(chosen))
    selection: dict[int, tuple[int, ...]] = {}
    for target in instance.ordered(instance.targets):
        subset = select_subset(ordered, target)
        if subset is None:
            raise InfeasibleCoverError(f"Chosen elements do not cover {instance.render(target)}.")
        selection[target] = subset
    used = {value for subset in selection.values() for value in subset}
    solution = CoverSolution(
        width=instance.width,
        elements=tuple(value for value in ordered if value in used),
        selection=selection,
        certified_minimal=certified,
        nodes=nodes,
    )
    if not solution_is_sound(instance, solution):
        raise RuntimeError("Cover selection does not rebuild every target.")
    return solution


def solution_is_sound(instance: CoverInstance, solution: CoverSolution) -> bool:
    """Every target is the union of its selection and every element is used."""
    elements = set(solution.elements)
    used: set[int] = set()
    for target in instance.targets:
        subset = solution.selection.get(target)
        if subset is None or not set(subset) <= elements:
            return False
        union = 0
        for value in subset:
            union |= value
        if union != target:
            return False
        used.update(subset)
    return used == elements


def greedy_cover(instance: CoverInstance) -> CoverSolution:
    """Largest-uncovered-gain heuristic followed by redundancy pruning."""
    _check_feasible(instance)
    targets = instance.ordered(instance.targets)
    candidates = instance.ordered(instance.candidates)
    covered = dict.fromkeys(targets, 0)
    chosen: list[int] = []
    while any(covered[t] != t for t in targets):
        best: int | None = None
        best_gain = 0
        for candidate in candidates:
            gain = sum(
                (candidate & ~covered[t]).bit_count()
                for t in targets
                if is_submask(candidate, t)
            )
            if gain > best_gain:
                best, best_gain = candidate, gain
        if best is None:
            raise InfeasibleCoverError("Greedy search cannot extend the cover.")
        chosen.append(best)
        candidates.remove(best)
        for t in targets:
            if is_submask(best, t):
                covered[t] |= best
    for value in reversed(list(chosen)):
        rest = [other for other in chosen if other != value]
        if all(is_cover(rest, t, instance.width) for t in targets):
            chosen = rest
    return build_solution(instance, chosen, certified=False)


class _BudgetExhaustedError(Exception):
    pass


class _ExactSearch:
    """Depth-limited search for a cover of a fixed size."""

    def __init__(self, instance: CoverInstance, budget: int) -> None:
        self.budget = budget
        self.nodes = 0
        self.targets = instance.ordered(instance.targets)
        self.candidates = instance.ordered(instance.candidates)
        self.submasks: list[list[int]] = [
            [i for i, c in enumerate(self.candidates) if is_submask(c, t)] for t in self.targets
        ]
        self._failed: set[tuple[tuple[int, ...], int, int]] = set()

    def solve(self, size: int) -> list[int] | None:
        self._failed.clear()
        covered = tuple(0 for _ in self.targets)
        return self._search(covered, [], 0, size)

    def _search(
        self,
        covered: tuple[int, ...],
        chosen: list[int],
        excluded: int,
        slots: int,
    ) -> list[int] | None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhaustedError
        key = (covered, excluded, slots)
        if key in self._failed:
            return None

        best_options: list[int] | None = None
        missing_bits = 0
        for t_index, target in enumerate(self.targets):
            missing = target & ~covered[t_index]
            if not missing:
                continue
            missing_bits += missing.bit_count()
            available = [i for i in self.submasks[t_index] if not excluded >> i & 1]
            reachable = covered[t_index]
            for i in available:
                reachable |= self.candidates[i]
            if reachable != target:
                self._failed.add(key)
                return None
            bits = missing
            while bits:
                low = bits & -bits
                bits ^= low
                options = [i for i in available if self.candidates[i] & low]
                if best_options is None or len(options) < len(best_options):
                    best_options = options
        if best_options is None:
            return [self.candidates[i] for i in chosen]
        if slots == 0 or not self._room_for(covered, excluded, missing_bits, slots):
            self._failed.add(key)
            return None

        for position, option in enumerate(best_options):
            value = self.candidates[option]
            next_covered = tuple(
                cov | value if is_submask(value, target) else cov
                for cov, target in zip(covered, self.targets, strict=True)
            )
            skipped = 0
            for earlier in best_options[:position]:
                skipped |= 1 << earlier
            found = self._search(next_covered, [*chosen, option], excluded | skipped, slots - 1)
            if found is not None:
                return found
        self._failed.add(key)
        return None

    def _room_for(self, covered: tuple[int, ...], excluded: int, missing: int, slots: int) -> bool:
        """Optimistic bound: no candidate supplies more missing bits than the best one."""
        best_gain = 0
        for index, candidate in enumerate(self.candidates):
            if excluded >> index & 1:
                continue
            gain = sum(
                (candidate & ~cov).bit_count()
                for cov, target in zip(covered, self.targets, strict=True)
                if is_submask(candidate, target)
            )
            best_gain = max(best_gain, gain)
        return best_gain > 0 and -(-missing // best_gain) <= slots


def min_cover(instance: CoverInstance, budget: int = DEFAULT_BUDGET) -> CoverSolution:
    """Exact minimum cover, certified when the search finishes within ``budget`` nodes."""
    if not instance.targets:
        return CoverSolution(width=instance.width, elements=(), certified_minimal=True)
    _check_feasible(instance)
    upper = greedy_cover(instance)
    search = _ExactSearch(instance, budget)
    lower = len(instance.targets).bit_length()
    try:
        for size in range(lower, upper.size):
            found = search.solve(size)
            if found is not None:
                LOGGER.debug("exact cover of size %d after %d nodes", size, search.nodes)
                return build_solution(instance, found, certified=True, nodes=search.nodes)
    except _BudgetExhaustedError:
        LOGGER.warning(
            "cover search exhausted %d nodes; keeping greedy cover of size %d",
            budget,
            upper.size,
        )
        raise BudgetExceededError(
            f"Exact cover search exceeded the budget of {budget} nodes.",
            best=replace(upper, nodes=search.nodes),
        ) from None
    return replace(upper, certified_minimal=True, nodes=search.nodes)


def solve_cover(
    instance: CoverInstance,
    *,
    solver: str = "exact",
    budget: int = DEFAULT_BUDGET,
    strict: bool = False,
) -> CoverSolution:
    """Dispatch to the exact or greedy solver.

    With ``strict`` a budget overrun propagates; otherwise the greedy cover is
    returned uncertified.
    """
    if solver == "greedy":
        return greedy_cover(instance)
    try:
        return min_cover(instance, budget)
    except BudgetExceededError as exc:
        if strict:
            raise
        return exc.best
