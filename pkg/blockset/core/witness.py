"""Witness languages that attain state-complexity bounds."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass

from blockset.core.blockcore import (
    Bitmap,
    BlockParams,
    Word,
    bitmap_from_words,
    index_to_word,
    word_to_index,
)
from blockset.core.config_validation import require_at_least
from blockset.core.errors import BadParityError, UnknownFamilyError
from blockset.logging_utils import get_logger

LOGGER = get_logger()


@dataclass(frozen=True)
class MaxWitnessParams:
    """Shape of the maximal-DFA witness over ``{a, b}``."""

    ell: int
    r: int
    t: int
    r_star: int

    @property
    def block_width(self) -> int:
        return 1 << self.r_star


def max_witness_params(ell: int) -> MaxWitnessParams:
    require_at_least(ell, 1, "ell")
    r = next(i for i in range(ell + 1) if (1 << (ell - i)) <= (1 << (1 << i)) - 1)
    wide = 1 << (ell - r)
    t = max(wide, (1 << (1 << (r - 1))) - 1)
    r_star = r if t == wide else r - 1
    return MaxWitnessParams(ell=ell, r=r, t=t, r_star=r_star)


def _max_witness_from_definition(shape: MaxWitnessParams) -> Bitmap:
    """``w1 w2`` with ``|w2| = r_star`` is a word iff ``ind(w1) < t`` and bit ``ind(w2)``
    of ``ind(w1) + 1`` is set."""
    params = BlockParams(2, shape.ell)
    head = BlockParams(2, shape.ell - shape.r_star)
    tail = BlockParams(2, shape.r_star)
    words = []
    for i in range(min(shape.t, head.universe_size)):
        for j in range(tail.universe_size):
            if (i + 1) >> j & 1:
                words.append(index_to_word(i, head) + index_to_word(j, tail))
    return bitmap_from_words(words, params)


def max_witness(ell: int) -> tuple[Bitmap, MaxWitnessParams]:
    """Binary block language whose minimal DFA has the largest possible size.

    Block ``i`` of width ``2**r_star`` holds the binary expansion of ``i + 1``
    read from its least significant digit; a zero block pads the odd case.
    """
    shape = max_witness_params(ell)
    params = BlockParams(2, ell)
    width = shape.block_width
    bits = 0
    for i in range(shape.t):
        bits |= (i + 1) << (i * width)
    bitmap = Bitmap(params, bits)
    if bitmap != _max_witness_from_definition(shape):
        raise RuntimeError(f"Closed form and definition of the maximal witness differ at {ell}.")
    LOGGER.debug("max witness ell=%d r=%d t=%d r_star=%d", ell, shape.r, shape.t, shape.r_star)
    return bitmap, shape


def palindrome_witness(k: int, d: int) -> Bitmap:
    """Words ``w reverse(w)`` with ``|w| = d``."""
    require_at_least(k, 2, "k")
    require_at_least(d, 1, "d")
    params = BlockParams(k, 2 * d)
    half = BlockParams(k, d)
    bits = 0
    for i in range(half.universe_size):
        word = index_to_word(i, half)
        bits |= 1 << word_to_index(word + word.reversed(), params)
    return Bitmap(params, bits)


def _half_match_accepts(word: Word, d: int, parity: int) -> bool:
    symbols = word.symbols
    return all(
        symbols[i] == symbols[2 * d - 1 - i] for i in range(parity, d, 2)
    )


def half_match_witness(k: int, d: int, parity: int) -> Bitmap:
    """Words of length ``2d`` mirrored at every position ``i < d`` with ``i % 2 == parity``.

    Intersecting both parities gives the palindromes of length ``2d``.
    """
    if parity not in (0, 1):
        raise BadParityError(f"Parity must be 0 or 1, got {parity}.")
    require_at_least(k, 2, "k")
    require_at_least(d, 1, "d")
    params = BlockParams(k, 2 * d)
    bits = 0
    for index in range(params.universe_size):
        if _half_match_accepts(index_to_word(index, params), d, parity):
            bits |= 1 << index
    return Bitmap(params, bits)


def prohibited_symbol_accepts(word: Word, k: int, d: int) -> bool:
    """Some ``i < d`` has ``w_i == w_{i+d}`` and that symbol is not the last one."""
    symbols = word.symbols
    return any(symbols[i] == symbols[i + d] != k - 1 for i in range(d))


def prohibited_symbol_witness(k: int, d: int) -> Bitmap:
    require_at_least(k, 2, "k")
    require_at_least(d, 2, "d")
    params = BlockParams(k, 2 * d)
    bits = 0
    for index in range(params.universe_size):
        if prohibited_symbol_accepts(index_to_word(index, params), k, d):
            bits |= 1 << index
    return Bitmap(params, bits)


def subalphabet_block(params: BlockParams, symbols: set[int]) -> Bitmap:
    """All words of the block that use only ``symbols``."""
    bits = 0
    for index in range(params.universe_size):
        if set(index_to_word(index, params).symbols) <= symbols:
            bits |= 1 << index
    return Bitmap(params, bits)


def _singleton(symbol: int) -> Callable[[BlockParams], Bitmap]:
    def build(params: BlockParams) -> Bitmap:
        require_at_least(params.k, symbol + 1, "k")
        return bitmap_from_words([Word((symbol,) * params.ell)], params)

    return build


def _subalphabet(*symbols: int) -> Callable[[BlockParams], Bitmap]:
    def build(params: BlockParams) -> Bitmap:
        require_at_least(params.k, max(symbols) + 1, "k")
        return subalphabet_block(params, set(symbols))

    return build


def _two_singletons(params: BlockParams) -> Bitmap:
    require_at_least(params.k, 2, "k")
    return bitmap_from_words([Word((0,) * params.ell), Word((1,) * params.ell)], params)


SIMPLE_FAMILIES: dict[str, Callable[[BlockParams], Bitmap]] = {
    "full": Bitmap.full,
    "singleton-a": _singleton(0),
    "singleton-b": _singleton(1),
    "ab-singletons": _two_singletons,
    "ac-block": _subalphabet(0, 2),
    "bc-block": _subalphabet(1, 2),
}


def simple_witness(name: str, params: BlockParams) -> Bitmap:
    """Named witness: full block, singletons, sub-alphabet blocks."""
    try:
        build = SIMPLE_FAMILIES[name]
    except KeyError as exc:
        options = ", ".join(sorted(SIMPLE_FAMILIES))
        raise UnknownFamilyError(f"Unknown witness family {name!r}; known: {options}.") from exc
    return build(params)
