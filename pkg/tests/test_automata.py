"""Tests for ranked and general automata."""

from __future__ import annotations

import itertools
import random
from collections import deque

import pytest

from blockset.core.automata import (
    GeneralAutomaton,
    RankedAutomaton,
    as_general,
    determinize,
    dsc,
    equivalent,
    minimize_dfa,
    minimize_ranked,
    nsc_upper,
    reverse_automaton,
    trim,
    width_profile,
)
from blockset.core.blockcore import Bitmap, BlockParams, Word, index_to_word, words_from_bitmap
from blockset.core.errors import NotDeterministicError, NotRankedError, ParamsMismatchError
from blockset.core.langops import reverse_bitmap
from blockset.core.synthesis import automaton_to_bitmap, bitmap_to_min_dfa, synthesize_min_nfa

EXAMPLE = Bitmap.from_string("1011011100011110", BlockParams(2, 4))


def test_min_dfa_of_example_has_expected_widths() -> None:
    automaton = bitmap_to_min_dfa(EXAMPLE)
    profile = width_profile(automaton)
    assert automaton.is_deterministic
    assert automaton.num_states == 11
    assert profile.widths == (1, 3, 4, 2, 1)
    assert profile.has_sink
    assert profile.width == 4
    assert dsc(automaton) == 12


def test_accepts_matches_bitmap() -> None:
    automaton = bitmap_to_min_dfa(EXAMPLE)
    for index in range(len(EXAMPLE)):
        word = index_to_word(index, EXAMPLE.params)
        assert automaton.accepts(word) == bool(EXAMPLE.bit(index))


def test_determinize_and_minimize_recover_the_min_dfa() -> None:
    nfa = synthesize_min_nfa(EXAMPLE).automaton
    assert not nfa.is_deterministic
    minimal = minimize_ranked(determinize(nfa))
    assert minimal.num_states == 11
    assert automaton_to_bitmap(minimal) == EXAMPLE


def test_minimize_ranked_rejects_nfa() -> None:
    nfa = synthesize_min_nfa(EXAMPLE).automaton
    with pytest.raises(NotDeterministicError):
        minimize_ranked(nfa)


def test_reverse_automaton_accepts_reversed_language() -> None:
    reversed_nfa = reverse_automaton(bitmap_to_min_dfa(EXAMPLE))
    reversed_nfa.check_ranked()
    assert automaton_to_bitmap(reversed_nfa) == reverse_bitmap(EXAMPLE)
    assert nsc_upper(reversed_nfa) <= 11


def test_trim_drops_dead_states() -> None:
    params = BlockParams(2, 1)
    automaton = RankedAutomaton(
        params=params,
        ranks=(1, 0, 0),
        initial=frozenset({0}),
        final=frozenset({1}),
        transitions=frozenset({(0, 0, 1), (0, 1, 2)}),
    )
    trimmed = trim(automaton)
    assert trimmed.num_states == 2
    assert automaton_to_bitmap(trimmed).to_string() == "10"


def test_check_ranked_rejects_rank_jumps() -> None:
    automaton = RankedAutomaton(
        params=BlockParams(2, 2),
        ranks=(2, 0),
        initial=frozenset({0}),
        final=frozenset({1}),
        transitions=frozenset({(0, 0, 1)}),
    )
    with pytest.raises(NotRankedError):
        automaton.check_ranked()


def test_equivalent_compares_languages() -> None:
    dfa = bitmap_to_min_dfa(EXAMPLE)
    nfa = synthesize_min_nfa(EXAMPLE).automaton
    assert equivalent(dfa, nfa)
    other = bitmap_to_min_dfa(Bitmap.from_string("1011011100011111", EXAMPLE.params))
    assert not equivalent(dfa, other)


def test_equivalent_rejects_mixed_alphabets() -> None:
    binary = bitmap_to_min_dfa(Bitmap.from_string("10", BlockParams(2, 1)))
    ternary = bitmap_to_min_dfa(Bitmap.from_string("100", BlockParams(3, 1)))
    with pytest.raises(ParamsMismatchError):
        equivalent(binary, ternary)


def test_general_automaton_completion_adds_a_sink() -> None:
    loop = GeneralAutomaton(
        k=2,
        num_states=1,
        initial=0,
        final=frozenset({0}),
        transitions=frozenset({(0, 0, 0)}),
    )
    assert not loop.is_complete
    complete = loop.completed()
    assert complete.is_complete
    assert complete.num_states == 2
    assert complete.accepts(Word.parse("aaa", 2))
    assert not complete.accepts(Word.parse("ab", 2))


def test_minimize_dfa_merges_equivalent_states() -> None:
    # Two copies of "even number of symbols".
    doubled = GeneralAutomaton(
        k=1,
        num_states=4,
        initial=0,
        final=frozenset({0, 2}),
        transitions=frozenset({(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 0, 0)}),
    )
    minimal = minimize_dfa(doubled)
    assert minimal.num_states == 2
    for length in range(6):
        assert minimal.accepts(Word((0,) * length)) == (length % 2 == 0)


@pytest.mark.parametrize(("k", "ell"), [(2, 2), (3, 2), (2, 3)])
def test_dsc_counts_one_sink(k: int, ell: int) -> None:
    params = BlockParams(k, ell)
    full = bitmap_to_min_dfa(Bitmap.full(params))
    assert dsc(full) == ell + 2
    assert dsc(minimize_dfa(as_general(full))) == ell + 2


def test_every_binary_block_of_length_two_round_trips() -> None:
    params = BlockParams(2, 2)
    for bits in itertools.product("01", repeat=4):
        bitmap = Bitmap.from_string("".join(bits), params)
        if bitmap.is_empty():
            continue
        assert automaton_to_bitmap(bitmap_to_min_dfa(bitmap)) == bitmap


def _prefix_tree(bitmap: Bitmap) -> GeneralAutomaton:
    """One state per distinct proper prefix of a word, plus one shared accepting state."""
    ids: dict[tuple[int, ...], int] = {(): 0}
    transitions: set[tuple[int, int, int]] = set()
    accept = -1
    pending: list[tuple[int, int, tuple[int, ...]]] = []
    for word in words_from_bitmap(bitmap):
        for length in range(1, bitmap.ell):
            prefix = word.symbols[:length]
            if prefix not in ids:
                ids[prefix] = len(ids)
            transitions.add((ids[prefix[:-1]], prefix[-1], ids[prefix]))
        pending.append((ids[word.symbols[:-1]], word.symbols[-1], accept))
    accept = len(ids)
    transitions.update((source, symbol, accept) for source, symbol, _ in pending)
    return GeneralAutomaton(
        k=bitmap.k,
        num_states=accept + 1,
        initial=0,
        final=frozenset({accept}),
        transitions=frozenset(transitions),
    )


def _distinguishable(a: GeneralAutomaton, first: int, second: int) -> bool:
    """Whether some word leads exactly one of two states of a complete DFA to acceptance."""
    seen = {(first, second)}
    queue = deque(seen)
    while queue:
        p, q = queue.popleft()
        if (p in a.final) != (q in a.final):
            return True
        for symbol in range(a.k):
            (p_next,) = a.step(p, symbol)
            (q_next,) = a.step(q, symbol)
            if (p_next, q_next) not in seen:
                seen.add((p_next, q_next))
                queue.append((p_next, q_next))
    return False


def _assert_pairwise_distinct(a: GeneralAutomaton) -> None:
    assert a.is_complete
    assert a.is_deterministic
    for first, second in itertools.combinations(range(a.num_states), 2):
        assert _distinguishable(a, first, second), (first, second)


def test_prefix_tree_of_example_merges_to_the_min_dfa() -> None:
    tree = _prefix_tree(EXAMPLE)
    assert tree.num_states == 1 + 2 + 4 + 7 + 1
    merged = minimize_dfa(tree)
    assert merged.num_states == 12
    assert merged == minimize_dfa(as_general(bitmap_to_min_dfa(EXAMPLE)))


@pytest.mark.parametrize(("k", "ell"), [(2, 1), (2, 3), (2, 4), (3, 2), (3, 3)])
def test_prefix_tree_merging_agrees_with_quotient_construction(k: int, ell: int) -> None:
    params = BlockParams(k, ell)
    rng = random.Random(k * 100 + ell)
    for _ in range(15):
        bitmap = Bitmap(params, rng.randrange(1, 1 << params.universe_size))
        merged = minimize_dfa(_prefix_tree(bitmap))
        assert merged == minimize_dfa(as_general(bitmap_to_min_dfa(bitmap)))
        assert merged.num_states == dsc(bitmap_to_min_dfa(bitmap))


@pytest.mark.parametrize(("k", "ell"), [(2, 2), (2, 4), (3, 2)])
def test_minimized_states_have_distinct_right_languages(k: int, ell: int) -> None:
    params = BlockParams(k, ell)
    rng = random.Random(k * 10 + ell)
    for _ in range(10):
        bitmap = Bitmap(params, rng.randrange(1, 1 << params.universe_size))
        _assert_pairwise_distinct(minimize_dfa(_prefix_tree(bitmap)))
    _assert_pairwise_distinct(minimize_dfa(as_general(bitmap_to_min_dfa(EXAMPLE))))
