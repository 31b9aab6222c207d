"""Exception hierarchy shared by the blockset library and CLI."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from blockset.core.cover import CoverSolution


class BlocksetError(ValueError):
    """Base class for every domain failure raised by blockset."""


class WrongLengthError(BlocksetError):
    """Raised when a word does not have the length an operation requires."""


class BadSymbolError(BlocksetError):
    """Raised when a symbol index is outside the alphabet."""


class IndexOutOfRangeError(BlocksetError):
    """Raised for word indices, levels or segment indices outside their range."""


class ParamsTooLargeError(BlocksetError):
    """Raised when k**ell exceeds the materialization cap."""


class ParamsMismatchError(BlocksetError):
    """Raised when operands disagree on alphabet size or block length."""


class EmptyLanguageError(BlocksetError):
    """Raised by constructions that need at least one word."""


class NotDeterministicError(BlocksetError):
    """Raised when a deterministic automaton is required."""


class NotRankedError(BlocksetError):
    """Raised when an automaton breaks the rank discipline of block languages."""


class AutomatonShapeError(BlocksetError):
    """Raised when surgery needs a single initial and a single final state."""


class WidthMismatchError(BlocksetError):
    """Raised when bit vectors of different widths are combined."""


class InfeasibleCoverError(BlocksetError):
    """Raised when some target has no decomposition over the candidates."""


class BudgetExceededError(BlocksetError):
    """Raised when exact cover search runs out of its node budget."""

    def __init__(self, message: str, best: CoverSolution) -> None:
        super().__init__(message)
        self.best = best


class UnknownFamilyError(BlocksetError):
    """Raised for witness family names that are not registered."""


class BadParityError(BlocksetError):
    """Raised when a parity argument is not 0 or 1."""


class FormatError(BlocksetError):
    """Raised when a BLK1, AUT1 or COV1 document cannot be parsed."""

    def __init__(self, message: str, line: int | None = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
