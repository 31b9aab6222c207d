"""Tests for block-closed operations and automaton surgery."""

from __future__ import annotations

import itertools
import random

import pytest

from blockset.core.automata import RankedAutomaton, dsc, equivalent, minimize_dfa
from blockset.core.blockcore import Bitmap, BlockParams, Word, words_from_bitmap
from blockset.core.bounds import bitmap_dsc
from blockset.core.errors import (
    EmptyLanguageError,
    NotDeterministicError,
    ParamsMismatchError,
)
from blockset.core.langops import (
    add_word,
    bm_and,
    bm_not,
    bm_or,
    complement_automaton,
    concat_bitmaps,
    perfect_shuffle,
    plus_automaton,
    remove_word,
    reverse_bitmap,
    reverse_by_index,
    star_automaton,
    stencil_automaton,
    to_array,
)
from blockset.core.synthesis import bitmap_to_min_dfa, bitmap_to_min_nfa
from blockset.core.witness import palindrome_witness

BINARY_4 = BlockParams(2, 4)
EXAMPLE = Bitmap.from_string("1011011100011110", BINARY_4)


def test_reverse_worked_example() -> None:
    bitmap = Bitmap.from_string("10011000", BlockParams(2, 3))
    assert reverse_bitmap(bitmap).to_string() == "11000010"


def test_reverse_matches_index_oracle_exhaustively() -> None:
    for bits in range(1 << 16):
        bitmap = Bitmap(BINARY_4, bits)
        assert reverse_bitmap(bitmap) == reverse_by_index(bitmap)


@pytest.mark.parametrize(("k", "ell"), [(3, 2), (3, 3), (4, 2), (2, 7)])
def test_reverse_matches_index_oracle_on_samples(k: int, ell: int) -> None:
    rng = random.Random(k * 100 + ell)
    params = BlockParams(k, ell)
    for _ in range(200):
        bitmap = Bitmap(params, rng.getrandbits(params.universe_size))
        assert reverse_bitmap(bitmap) == reverse_by_index(bitmap)
        assert reverse_bitmap(reverse_bitmap(bitmap)) == bitmap


def test_palindromes_are_fixed_by_reversal() -> None:
    palindromes = palindrome_witness(3, 2)
    assert reverse_bitmap(palindromes) == palindromes


def test_perfect_shuffle_interleaves_blocks() -> None:
    values = to_array(Bitmap.from_string("11110000", BlockParams(2, 3)))
    assert "".join(str(v) for v in perfect_shuffle(values, 2, 1)) == "10101010"
    assert "".join(str(v) for v in perfect_shuffle(values, 2, 2)) == "11001100"


def test_boolean_operations() -> None:
    params = BlockParams(2, 2)
    first = Bitmap.from_string("1100", params)
    second = Bitmap.from_string("1010", params)
    assert bm_and(first, second).to_string() == "1000"
    assert bm_or(first, second).to_string() == "1110"
    assert bm_not(first).to_string() == "0011"
    assert bm_not(bm_and(first, second)) == bm_or(bm_not(first), bm_not(second))


def test_boolean_operations_need_one_universe() -> None:
    with pytest.raises(ParamsMismatchError):
        bm_and(Bitmap.full(BlockParams(2, 2)), Bitmap.full(BlockParams(2, 3)))


def test_word_edits() -> None:
    full = Bitmap.full(BINARY_4)
    removed = remove_word(full, Word.parse("aaaa", 2))
    assert removed.to_string() == "0" + "1" * 15
    assert add_word(removed, Word.parse("aaaa", 2)) == full
    assert bitmap_dsc(full) == 6
    assert bitmap_dsc(removed) == 9


def test_concat_replaces_ones_by_copies() -> None:
    first = Bitmap.from_string("01", BlockParams(2, 1))
    second = Bitmap.from_string("10", BlockParams(2, 1))
    assert concat_bitmaps(first, second).to_string() == "0010"


def test_concat_of_unary_singletons() -> None:
    first = Bitmap.full(BlockParams(1, 2))
    second = Bitmap.full(BlockParams(1, 3))
    result = concat_bitmaps(first, second)
    assert result.ell == 5
    assert bitmap_dsc(result) == 2 + 3 + 2


def test_concat_size_is_sum_minus_two() -> None:
    tail = Bitmap.from_string("101", BlockParams(3, 1))
    result = concat_bitmaps(EXAMPLE, Bitmap.from_string("11", BlockParams(2, 1)))
    assert bitmap_dsc(result) == bitmap_dsc(EXAMPLE) + 3 - 2
    with pytest.raises(ParamsMismatchError):
        concat_bitmaps(EXAMPLE, tail)


def test_star_and_plus_sizes() -> None:
    minimal = bitmap_to_min_dfa(EXAMPLE)
    star = star_automaton(minimal)
    plus = plus_automaton(minimal)
    assert minimize_dfa(star).num_states == 11
    assert minimize_dfa(plus).num_states == 12
    assert star.accepts(Word(()))
    assert not plus.accepts(Word(()))
    twice = Word.parse("aaaa", 2) + Word.parse("abab", 2)
    assert star.accepts(twice)
    assert plus.accepts(twice)
    assert not plus.accepts(Word.parse("aaa", 2))


def test_star_of_an_nfa_keeps_its_language() -> None:
    nfa = bitmap_to_min_nfa(EXAMPLE)
    star = star_automaton(nfa)
    assert not star.is_deterministic
    assert dsc(star) == 11


def test_stencil_of_single_word() -> None:
    single = Bitmap.from_string("10000000", BlockParams(2, 3))
    stencil = stencil_automaton(bitmap_to_min_dfa(single))
    assert minimize_dfa(stencil).num_states == 7
    assert stencil.accepts(Word.parse("aaa", 2))
    assert stencil.accepts(Word.parse("ab", 2))
    assert stencil.accepts(Word.parse("abba", 2))
    assert stencil.accepts(Word(()))
    assert not stencil.accepts(Word.parse("aab", 2))


def test_stencil_needs_a_dfa() -> None:
    with pytest.raises(NotDeterministicError):
        stencil_automaton(bitmap_to_min_nfa(EXAMPLE))


def test_complement_swaps_acceptance() -> None:
    complement = complement_automaton(bitmap_to_min_dfa(EXAMPLE))
    assert complement.accepts(Word(()))
    assert complement.accepts(Word.parse("ab", 2))
    assert not complement.accepts(Word.parse("aaaa", 2))
    assert complement.accepts(Word.parse("abaa", 2))
    assert minimize_dfa(complement).num_states == 12


def test_complement_needs_a_dfa() -> None:
    with pytest.raises(NotDeterministicError):
        complement_automaton(bitmap_to_min_nfa(EXAMPLE))


def test_surgery_needs_words() -> None:
    single = bitmap_to_min_dfa(Bitmap.from_string("1000", BlockParams(2, 2)))
    dead = RankedAutomaton(
        params=single.params,
        ranks=single.ranks,
        initial=single.initial,
        final=frozenset(),
        transitions=single.transitions,
    )
    with pytest.raises(EmptyLanguageError):
        star_automaton(dead)


ORACLE_SHAPES = [(2, 1), (2, 2), (2, 3), (3, 2)]


def _random_languages(k: int, ell: int, count: int = 6) -> list[Bitmap]:
    params = BlockParams(k, ell)
    rng = random.Random(k * 1000 + ell)
    return [Bitmap(params, rng.randrange(1, 1 << params.universe_size)) for _ in range(count)]


def _words_up_to(k: int, length: int) -> list[tuple[int, ...]]:
    return [
        symbols
        for size in range(length + 1)
        for symbols in itertools.product(range(k), repeat=size)
    ]


def _in_iteration(symbols: tuple[int, ...], members: set[tuple[int, ...]], ell: int) -> bool:
    if len(symbols) % ell:
        return False
    chunks = [symbols[start : start + ell] for start in range(0, len(symbols), ell)]
    return all(chunk in members for chunk in chunks)


def _members(bitmap: Bitmap) -> set[tuple[int, ...]]:
    return {word.symbols for word in words_from_bitmap(bitmap)}


@pytest.mark.parametrize(("k", "ell"), ORACLE_SHAPES)
def test_star_and_plus_match_membership_oracle(k: int, ell: int) -> None:
    words = _words_up_to(k, 3 * ell)
    for bitmap in _random_languages(k, ell):
        members = _members(bitmap)
        minimal = bitmap_to_min_dfa(bitmap)
        star = star_automaton(minimal)
        plus = plus_automaton(minimal)
        for symbols in words:
            in_star = _in_iteration(symbols, members, ell)
            assert star.accepts(Word(symbols)) == in_star, symbols
            assert plus.accepts(Word(symbols)) == (in_star and len(symbols) > 0), symbols


@pytest.mark.parametrize(("k", "ell"), ORACLE_SHAPES)
def test_stencil_matches_membership_oracle(k: int, ell: int) -> None:
    words = _words_up_to(k, ell + 2)
    for bitmap in _random_languages(k, ell):
        members = _members(bitmap)
        stencil = stencil_automaton(bitmap_to_min_dfa(bitmap))
        for symbols in words:
            expected = len(symbols) != ell or symbols in members
            assert stencil.accepts(Word(symbols)) == expected, symbols


@pytest.mark.parametrize("ell", [1, 2, 3])
def test_complement_is_stencil_of_block_complement(ell: int) -> None:
    params = BlockParams(2, ell)
    for bits in range(1, (1 << params.universe_size) - 1):
        bitmap = Bitmap(params, bits)
        complement = complement_automaton(bitmap_to_min_dfa(bitmap))
        stencil = stencil_automaton(bitmap_to_min_dfa(bm_not(bitmap)))
        assert equivalent(complement, stencil), bitmap.to_string()
