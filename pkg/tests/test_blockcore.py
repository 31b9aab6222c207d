"""Tests for the bitmap representation of block languages."""

from __future__ import annotations

import pytest

from blockset.core.blockcore import (
    Bitmap,
    BlockParams,
    Word,
    bitmap_from_words,
    index_to_word,
    quotient_bitmap,
    segment,
    segment_set,
    segment_sets,
    word_to_index,
    words_from_bitmap,
)
from blockset.core.errors import (
    BadSymbolError,
    IndexOutOfRangeError,
    ParamsTooLargeError,
    WrongLengthError,
)

EXAMPLE = "1011011100011110"
BINARY_4 = BlockParams(2, 4)


def _example() -> Bitmap:
    return Bitmap.from_string(EXAMPLE, BINARY_4)


@pytest.mark.parametrize(
    ("text", "index"),
    [("aa", 0), ("ab", 1), ("ba", 2), ("bb", 3)],
)
def test_word_index_is_lexicographic(text: str, index: int) -> None:
    params = BlockParams(2, 2)
    word = Word.parse(text, 2)
    assert word_to_index(word, params) == index
    assert index_to_word(index, params) == word


def test_index_to_word_over_ternary_alphabet() -> None:
    params = BlockParams(3, 3)
    assert index_to_word(5, params) == Word((0, 1, 2))
    assert index_to_word(26, params).render(3) == "ccc"


def test_string_form_lists_bit_zero_first() -> None:
    bitmap = _example()
    assert bitmap.to_string() == EXAMPLE
    assert bitmap.bit(0) == 1
    assert bitmap.bit(1) == 0
    assert bitmap.popcount() == 10


def test_words_from_bitmap_are_sorted() -> None:
    bitmap = Bitmap.from_string("0110", BlockParams(2, 2))
    assert [word.render(2) for word in words_from_bitmap(bitmap)] == ["ab", "ba"]
    assert bitmap_from_words(words_from_bitmap(bitmap), bitmap.params) == bitmap


def test_quotients_are_segments() -> None:
    bitmap = _example()
    assert quotient_bitmap(bitmap, Word.parse("a", 2)).to_string() == "10110111"
    assert quotient_bitmap(bitmap, Word.parse("b", 2)).to_string() == "00011110"
    assert quotient_bitmap(bitmap, Word.parse("ab", 2)).to_string() == "0111"
    full_length = quotient_bitmap(bitmap, Word.parse("aaaa", 2))
    assert full_length.ell == 0
    assert full_length.bits == 1


def test_segment_slices_the_bitmap() -> None:
    part = segment(_example(), 2, 3)
    assert part.to_string() == "1110"
    with pytest.raises(IndexOutOfRangeError):
        segment(_example(), 2, 4)


def test_segment_set_sizes_match_example_widths() -> None:
    assert [len(level) for level in segment_sets(_example())] == [1, 3, 4, 2, 1]


def test_segment_set_canonical_order_prefers_more_ones() -> None:
    assert [format(value, "02b")[::-1] for value in segment_set(_example(), 1)] == [
        "11",
        "01",
        "10",
    ]


def test_wrong_length_is_rejected() -> None:
    with pytest.raises(WrongLengthError):
        Bitmap.from_string("101", BlockParams(2, 2))
    with pytest.raises(WrongLengthError):
        Bitmap(BlockParams(2, 1), 0b100)


def test_bad_symbols_are_rejected() -> None:
    with pytest.raises(BadSymbolError):
        Word.parse("ac", 2)
    with pytest.raises(BadSymbolError):
        word_to_index(Word((0, 3)), BlockParams(3, 2))


def test_word_of_wrong_length_is_rejected() -> None:
    with pytest.raises(WrongLengthError):
        word_to_index(Word.parse("abc", 3), BlockParams(3, 2))


def test_universe_cap() -> None:
    with pytest.raises(ParamsTooLargeError):
        BlockParams(2, 41)
    assert BlockParams(1, 1000).universe_size == 1


def test_dotted_words_for_large_alphabets() -> None:
    word = Word.parse("0.27.3", 30)
    assert word.symbols == (0, 27, 3)
    assert word.render(30) == "0.27.3"
