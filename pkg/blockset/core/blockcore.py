"""Bitmap representation of block languages.

A block language over an alphabet of ``k`` symbols contains words of one fixed
length ``ell``. Its bitmap has ``k**ell`` bits; bit ``i`` records whether the
``i``-th word of the block, in lexicographic order, belongs to the language.

Bitmaps are stored as Python integers with bit ``i`` of the integer holding
``b_i``. The textual form lists ``b_0 b_1 ...`` from left to right, so it is
the binary expansion of the integer read backwards.
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator
from dataclasses import dataclass

from blockset.core.errors import (
    BadSymbolError,
    IndexOutOfRangeError,
    ParamsTooLargeError,
    WrongLengthError,
)

MAX_UNIVERSE_EXPONENT = 40
MAX_UNIVERSE = 1 << MAX_UNIVERSE_EXPONENT
_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def bits_to_string(value: int, width: int) -> str:
    """Render ``width`` bits of ``value`` with bit 0 first."""
    if width == 0:
        return ""
    return format(value, f"0{width}b")[::-1]


def string_to_bits(text: str) -> int:
    """Parse a ``0``/``1`` string written with bit 0 first."""
    if any(char not in "01" for char in text):
        raise ValueError(f"Bit strings may only contain 0 and 1, got {text!r}.")
    if not text:
        return 0
    return int(text[::-1], 2)


def canonical_key(value: int, width: int) -> tuple[int, str]:
    """Ordering key for bit vectors: more ones first, then the bit string."""
    return (-value.bit_count(), bits_to_string(value, width))


def is_submask(inner: int, outer: int) -> bool:
    """Return whether every set bit of ``inner`` is also set in ``outer``."""
    return inner & ~outer == 0


@dataclass(frozen=True)
class BlockParams:
    """Alphabet size and block length of a universe ``Sigma**ell``.

    ``ell == 0`` is accepted for the one-word universe ``{epsilon}`` that full
    length quotients live in.
    """

    k: int
    ell: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be at least 1.")
        if self.ell < 0:
            raise ValueError("ell must not be negative.")
        if self.k > 1 and (
            self.ell > MAX_UNIVERSE_EXPONENT or self.k**self.ell > MAX_UNIVERSE
        ):
            raise ParamsTooLargeError(
                f"k**ell for {self} exceeds the cap 2**{MAX_UNIVERSE_EXPONENT}."
            )

    @property
    def universe_size(self) -> int:
        return self.k**self.ell

    def level_size(self, level: int) -> int:
        """Number of bits in a segment of the given level."""
        return self.k**level

    def with_ell(self, ell: int) -> BlockParams:
        return BlockParams(self.k, ell)

    def __str__(self) -> str:
        return f"k={self.k}, ell={self.ell}"


@dataclass(frozen=True)
class Word:
    """A word as a tuple of symbol indices."""

    symbols: tuple[int, ...] = ()

    @classmethod
    def of(cls, symbols: Iterable[int]) -> Word:
        return cls(tuple(symbols))

    @classmethod
    def parse(cls, text: str, k: int) -> Word:
        """Parse letters (``k <= 26``) or dot separated indices."""
        cleaned = text.strip()
        if cleaned in {"", "-", "eps"}:
            return cls()
        if k > len(_LETTERS) or "." in cleaned:
            try:
                symbols = tuple(int(part) for part in cleaned.split("."))
            except ValueError as exc:
                raise BadSymbolError(f"Cannot parse word {text!r}.") from exc
        else:
            symbols = tuple(_LETTERS.find(char) for char in cleaned)
            if -1 in symbols:
                raise BadSymbolError(f"Cannot parse word {text!r}.")
        word = cls(symbols)
        _check_symbols(word, k)
        return word

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    def reversed(self) -> Word:
        return Word(self.symbols[::-1])

    def render(self, k: int) -> str:
        """Letters for alphabets of at most 26 symbols, dotted indices otherwise."""
        if k <= len(_LETTERS):
            return "".join(_LETTERS[symbol] for symbol in self.symbols)
        return ".".join(str(symbol) for symbol in self.symbols)

    def __add__(self, other: Word) -> Word:
        return Word(self.symbols + other.symbols)


@dataclass(frozen=True)
class Bitmap:
    """Membership bits of a block language, bit ``i`` for the ``i``-th word."""

    params: BlockParams
    bits: int = 0

    def __post_init__(self) -> None:
        if self.bits < 0 or self.bits >> self.params.universe_size:
            raise WrongLengthError(
                f"Bitmap bits do not fit in {self.params.universe_size} positions."
            )

    @classmethod
    def from_string(cls, text: str, params: BlockParams) -> Bitmap:
        if len(text) != params.universe_size:
            raise WrongLengthError(
                f"Expected {params.universe_size} bits for {params}, got {len(text)}."
            )
        return cls(params, string_to_bits(text))

    @classmethod
    def empty(cls, params: BlockParams) -> Bitmap:
        return cls(params, 0)

    @classmethod
    def full(cls, params: BlockParams) -> Bitmap:
        return cls(params, (1 << params.universe_size) - 1)

    @property
    def k(self) -> int:
        return self.params.k

    @property
    def ell(self) -> int:
        return self.params.ell

    def __len__(self) -> int:
        return self.params.universe_size

    def bit(self, index: int) -> int:
        if not 0 <= index < len(self):
            raise IndexOutOfRangeError(f"Bit index {index} outside [0, {len(self) - 1}].")
        return (self.bits >> index) & 1

    def is_empty(self) -> bool:
        return self.bits == 0

    def is_full(self) -> bool:
        return self.bits == (1 << len(self)) - 1

    def popcount(self) -> int:
        return self.bits.bit_count()

    def to_string(self) -> str:
        return bits_to_string(self.bits, len(self))

    def __str__(self) -> str:
        return self.to_string()


@dataclass(frozen=True)
class Segment:
    """The ``index``-th slice of ``k**level`` bits of a bitmap."""

    level: int
    index: int
    bits: int
    width: int

    def to_string(self) -> str:
        return bits_to_string(self.bits, self.width)


@dataclass(frozen=True)
class SegmentSet:
    """Distinct non-zero segments of one level."""

    level: int
    width: int
    members: frozenset[int]

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.ordered())

    def __contains__(self, value: object) -> bool:
        return value in self.members

    def ordered(self) -> list[int]:
        """Members in canonical order."""
        return sorted(self.members, key=lambda value: canonical_key(value, self.width))

    def strings(self) -> set[str]:
        return {bits_to_string(value, self.width) for value in self.members}


def _check_symbols(word: Word, k: int) -> None:
    for symbol in word.symbols:
        if not 0 <= symbol < k:
            raise BadSymbolError(f"Symbol index {symbol} outside alphabet of size {k}.")


def _index_over(word: Word, k: int) -> int:
    index = 0
    for symbol in word.symbols:
        index = index * k + symbol
    return index


def word_to_index(word: Word, params: BlockParams) -> int:
    """Lexicographic rank of ``word`` in ``Sigma**ell`` (base-k value)."""
    if len(word) != params.ell:
        raise WrongLengthError(f"Word of length {len(word)} in a block of length {params.ell}.")
    _check_symbols(word, params.k)
    return _index_over(word, params.k)


def index_to_word(index: int, params: BlockParams) -> Word:
    if not 0 <= index < params.universe_size:
        raise IndexOutOfRangeError(
            f"Word index {index} outside [0, {params.universe_size - 1}]."
        )
    symbols = [0] * params.ell
    for position in range(params.ell - 1, -1, -1):
        index, symbols[position] = divmod(index, params.k)
    return Word(tuple(symbols))


def bitmap_from_words(words: Iterable[Word], params: BlockParams) -> Bitmap:
    bits = 0
    for word in words:
        bits |= 1 << word_to_index(word, params)
    return Bitmap(params, bits)


def set_bit_indices(bits: int) -> Iterator[int]:
    """Yield positions of set bits in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def words_from_bitmap(bitmap: Bitmap) -> list[Word]:
    """Words of the language in lexicographic order."""
    return [index_to_word(index, bitmap.params) for index in set_bit_indices(bitmap.bits)]


def segment(bitmap: Bitmap, level: int, index: int) -> Segment:
    """Bits ``[index * k**level, (index + 1) * k**level)`` of the bitmap."""
    if not 0 <= level <= bitmap.ell:
        raise IndexOutOfRangeError(f"Level {level} outside [0, {bitmap.ell}].")
    count = bitmap.k ** (bitmap.ell - level)
    if not 0 <= index < count:
        raise IndexOutOfRangeError(f"Segment index {index} outside [0, {count - 1}].")
    width = bitmap.k**level
    value = (bitmap.bits >> (index * width)) & ((1 << width) - 1)
    return Segment(level=level, index=index, bits=value, width=width)


def quotient_bitmap(bitmap: Bitmap, word: Word) -> Bitmap:
    """Bitmap of the left quotient of the language by ``word``."""
    if len(word) > bitmap.ell:
        raise WrongLengthError(
            f"Quotient word of length {len(word)} longer than block length {bitmap.ell}."
        )
    _check_symbols(word, bitmap.k)
    level = bitmap.ell - len(word)
    part = segment(bitmap, level, _index_over(word, bitmap.k))
    return Bitmap(bitmap.params.with_ell(level), part.bits)


def split_blocks(value: int, k: int, width: int) -> list[int]:
    """Cut a bit vector of ``k * width`` bits into its ``k`` sub-blocks."""
    mask = (1 << width) - 1
    return [(value >> (j * width)) & mask for j in range(k)]


def join_blocks(blocks: Iterable[int], width: int) -> int:
    """Inverse of :func:`split_blocks`."""
    value = 0
    for j, block in enumerate(blocks):
        value |= block << (j * width)
    return value


def segment_set(bitmap: Bitmap, level: int) -> SegmentSet:
    if not 0 <= level <= bitmap.ell:
        raise IndexOutOfRangeError(f"Level {level} outside [0, {bitmap.ell}].")
    width = bitmap.k**level
    mask = (1 << width) - 1
    members: set[int] = set()
    remaining = bitmap.bits
    while remaining:
        value = remaining & mask
        if value:
            members.add(value)
        remaining >>= width
    return SegmentSet(level=level, width=width, members=frozenset(members))


def segment_sets(bitmap: Bitmap) -> list[SegmentSet]:
    """``B_0 .. B_ell`` indexed by level."""
    return [segment_set(bitmap, level) for level in range(bitmap.ell + 1)]
