"""Tests for the exact and greedy cover solvers."""

from __future__ import annotations

import random
from itertools import combinations

import pytest

from blockset.core.blockcore import is_submask
from blockset.core.cover import (
    CoverInstance,
    greedy_cover,
    is_cover,
    min_cover,
    select_subset,
    solution_is_sound,
    solve_cover,
)
from blockset.core.errors import BudgetExceededError, InfeasibleCoverError, WidthMismatchError

SEED = 20240917


def _brute_force_size(instance: CoverInstance) -> int:
    candidates = sorted(instance.candidates)
    for size in range(len(candidates) + 1):
        for chosen in combinations(candidates, size):
            if all(is_cover(chosen, target, instance.width) for target in instance.targets):
                return size
    raise AssertionError("instance has no cover")


def _random_instance(rng: random.Random) -> CoverInstance:
    width = rng.randint(1, 8)
    top = (1 << width) - 1
    targets = {rng.randint(1, top) for _ in range(rng.randint(1, 6))}
    candidates = set(targets)
    for target in sorted(targets):
        for _ in range(2):
            piece = target & rng.randint(1, top)
            if piece:
                candidates.add(piece)
    return CoverInstance(
        width=width,
        targets=frozenset(targets),
        candidates=frozenset(sorted(candidates)[:12]) | frozenset(targets),
    )


def test_min_cover_matches_brute_force_on_random_instances() -> None:
    rng = random.Random(SEED)
    for _ in range(200):
        instance = _random_instance(rng)
        solution = min_cover(instance)
        assert solution.certified_minimal
        assert solution.size == _brute_force_size(instance)
        assert solution_is_sound(instance, solution)
        for target, chosen in solution.selection.items():
            union = 0
            for value in chosen:
                assert is_submask(value, target)
                union |= value
            assert union == target


def test_example_rank_two_cover() -> None:
    instance = CoverInstance.from_strings(
        targets=["1011", "0111", "0001", "1110"],
        candidates=["1011", "0111", "0001", "1110", "1010", "0110", "1000", "0100", "0010"],
    )
    solution = min_cover(instance)
    assert solution.size == 3
    assert {instance.render(value) for value in solution.elements} == {"1010", "0110", "0001"}


def test_greedy_cover_is_sound_but_uncertified() -> None:
    instance = CoverInstance.from_strings(
        targets=["110", "011", "101"],
        candidates=["110", "011", "101", "100", "010", "001"],
    )
    solution = greedy_cover(instance)
    assert not solution.certified_minimal
    assert solution_is_sound(instance, solution)
    assert solution.size >= min_cover(instance).size


def test_budget_overrun_keeps_greedy_cover() -> None:
    singletons = ["1000000", "0100000", "0010000", "0001000", "0000100", "0000010", "0000001"]
    instance = CoverInstance.from_strings(targets=singletons, candidates=singletons)
    with pytest.raises(BudgetExceededError) as excinfo:
        min_cover(instance, budget=2)
    assert excinfo.value.best.size == 7
    assert not excinfo.value.best.certified_minimal

    relaxed = solve_cover(instance, budget=2)
    assert relaxed.size == 7
    assert not relaxed.certified_minimal
    with pytest.raises(BudgetExceededError):
        solve_cover(instance, budget=2, strict=True)
    assert min_cover(instance).certified_minimal


def test_greedy_solver_is_selected_by_name() -> None:
    instance = CoverInstance.from_strings(targets=["11"], candidates=["11", "10", "01"])
    solution = solve_cover(instance, solver="greedy")
    assert solution.size == 1
    assert not solution.certified_minimal


def test_empty_targets_need_no_element() -> None:
    instance = CoverInstance(width=3, targets=frozenset(), candidates=frozenset({1}))
    solution = min_cover(instance)
    assert solution.size == 0
    assert solution.certified_minimal


def test_infeasible_instance_is_rejected() -> None:
    instance = CoverInstance.from_strings(targets=["11"], candidates=["10"])
    with pytest.raises(InfeasibleCoverError):
        min_cover(instance)


def test_mixed_widths_are_rejected() -> None:
    with pytest.raises(WidthMismatchError):
        CoverInstance.from_strings(targets=["11"], candidates=["101"])


def test_solution_serializes_bit_strings() -> None:
    instance = CoverInstance.from_strings(targets=["110", "011"], candidates=["110", "011"])
    payload = min_cover(instance).to_dict()
    assert payload["size"] == 2
    assert payload["certified_minimal"] is True
    assert sorted(payload["elements"]) == ["011", "110"]
    assert payload["selection"]["110"] == ["110"]


def test_selection_prefers_fewest_then_earliest_elements() -> None:
    assert select_subset([0b1100, 0b0011, 0b1000, 0b0100, 0b1111], 0b1111) == (0b1111,)
    assert select_subset([0b1000, 0b0100, 0b1100, 0b0011], 0b1111) == (0b1100, 0b0011)
    assert select_subset([0b1000, 0b0011], 0b1111) is None


def test_selection_over_many_submasks_still_rebuilds_the_target() -> None:
    singles = [1 << bit for bit in range(24)]
    target = (1 << 24) - 1
    chosen = select_subset([*singles, target >> 12, target], target)
    assert chosen is not None
    combined = 0
    for value in chosen:
        combined |= value
    assert combined == target
    for value in chosen:
        rest = 0
        for other in chosen:
            if other != value:
                rest |= other
        assert rest != target
