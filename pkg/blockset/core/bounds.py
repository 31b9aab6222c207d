"""State-complexity bounds and checks of constructed automata against them.

Every formula is evaluated with exact integers. Reports carry the observed
size, the upper bound (and a lower bound where the operation has one) and,
when the exact cover solver certifies both sides, the NFA counterpart.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any

from blockset.core.automata import dsc, minimize_dfa, reverse_automaton, width_profile
from blockset.core.blockcore import Bitmap, Word
from blockset.core.config import DEFAULT_BUDGET
from blockset.core.config_validation import require_at_least, validate_choice
from blockset.core.errors import ParamsTooLargeError
from blockset.core.langops import (
    add_word,
    bm_and,
    bm_not,
    bm_or,
    complement_automaton,
    concat_bitmaps,
    plus_automaton,
    remove_word,
    reverse_bitmap,
    star_automaton,
    stencil_automaton,
)
from blockset.core.synthesis import bitmap_to_min_dfa, synthesize_min_nfa
from blockset.logging_utils import get_logger

LOGGER = get_logger()

_MAX_FORMULA_BITS = 1 << 16

OPERATIONS = frozenset(
    {
        "union",
        "intersection",
        "word-add",
        "word-remove",
        "concat",
        "block-complement",
        "star",
        "plus",
        "stencil",
        "complement",
        "reverse",
    }
)
_BINARY = frozenset({"union", "intersection", "concat"})
_WORD_OPS = frozenset({"word-add", "word-remove"})


def _guard(k: int, ell: int) -> None:
    if k.bit_length() * ell > _MAX_FORMULA_BITS:
        raise ParamsTooLargeError(f"Bound for k={k}, ell={ell} is too large to evaluate.")


def _fits_below_power(value: int, exponent: int) -> bool:
    """``value <= 2**exponent - 1`` without building the power."""
    return value.bit_length() <= exponent


def campeanu_ho_bound(k: int, ell: int) -> tuple[int, int]:
    """Largest minimal complete DFA of a block language, and the rank ``r`` it splits at."""
    require_at_least(k, 2, "k")
    require_at_least(ell, 1, "ell")
    _guard(k, ell)
    r = next(i for i in range(ell + 1) if _fits_below_power(k ** (ell - i), k**i))
    upper = (k ** (ell - r + 1) - 1) // (k - 1)
    lower = sum((1 << k**i) - 1 for i in range(r))
    return upper + lower + 1, r


def nfa_max_size(k: int, ell: int) -> int:
    """Largest minimal NFA of a block language over ``k`` symbols."""
    require_at_least(k, 2, "k")
    require_at_least(ell, 1, "ell")
    _guard(k, ell)
    half = (ell + 1) // 2
    chains = 2 * (k**half - 1) // (k - 1)
    return chains + k**half if ell % 2 == 0 else chains


def width_bounds(k: int, ell: int, level: int) -> tuple[int, int]:
    """Per-rank maxima ``(dfa, nfa)`` of minimal automata at rank ``level``.

    DFA ranks hold at most ``min(k**(ell-i), 2**(k**i) - 1)`` states, NFA ranks
    at most ``min(k**(ell-i), k**i)``.
    """
    require_at_least(k, 1, "k")
    if not 0 <= level <= ell:
        raise ValueError(f"level must lie in [0, {ell}].")
    _guard(k, ell)
    quotients = k ** (ell - level)
    segment_length = k**level
    if _fits_below_power(quotients, segment_length):
        dfa_max = quotients
    else:
        dfa_max = (1 << segment_length) - 1
    return dfa_max, min(quotients, segment_length)


@dataclass(frozen=True)
class NscResult:
    """Size of a synthesized minimal NFA; exact only when ``certified``."""

    value: int
    certified: bool
    widths: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"nsc": self.value, "certified": self.certified, "widths": list(self.widths)}


def bitmap_dsc(bitmap: Bitmap) -> int:
    """Minimal complete DFA size, sink included."""
    if bitmap.is_empty():
        return 1
    return bitmap_to_min_dfa(bitmap).num_states + 1


def dfa_widths(bitmap: Bitmap) -> tuple[int, ...]:
    if bitmap.is_empty():
        return (0,) * (bitmap.ell + 1)
    return width_profile(bitmap_to_min_dfa(bitmap)).widths


def nsc(
    bitmap: Bitmap,
    *,
    solver: str = "exact",
    budget: int = DEFAULT_BUDGET,
) -> NscResult:
    """Minimal NFA size; the empty language needs no state."""
    if bitmap.is_empty():
        return NscResult(value=0, certified=True, widths=(0,) * (bitmap.ell + 1))
    synthesis = synthesize_min_nfa(bitmap, solver=solver, budget=budget)
    widths = tuple(cover.size for cover in synthesis.covers)
    return NscResult(
        value=synthesis.num_states,
        certified=solver == "exact" and synthesis.certified,
        widths=widths,
    )


@dataclass(frozen=True)
class BoundReport:
    """Observed size of a construction against its bound."""

    subject: str
    formula_value: int
    observed_value: int
    lower_value: int | None = None
    measure: str = "dsc"
    certified: bool = True
    nfa_formula: int | None = None
    nfa_lower: int | None = None
    nfa_observed: int | None = None
    nfa_certified: bool | None = None

    @property
    def satisfied(self) -> bool:
        if self.observed_value > self.formula_value:
            return False
        return self.lower_value is None or self.observed_value >= self.lower_value

    @property
    def tight(self) -> bool:
        return self.observed_value == self.formula_value

    @property
    def nfa_satisfied(self) -> bool | None:
        if self.nfa_formula is None or self.nfa_observed is None or not self.nfa_certified:
            return None
        if self.nfa_observed > self.nfa_formula:
            return False
        return self.nfa_lower is None or self.nfa_observed >= self.nfa_lower

    @property
    def nfa_tight(self) -> bool | None:
        if self.nfa_formula is None or self.nfa_observed is None or not self.nfa_certified:
            return None
        return self.nfa_observed == self.nfa_formula

    def to_dict(self) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "measure": self.measure,
            "formula_value": self.formula_value,
            "lower_value": self.lower_value,
            "observed_value": self.observed_value,
            "satisfied": self.satisfied,
            "tight": self.tight,
            "certified": self.certified,
            "nfa_formula": self.nfa_formula,
            "nfa_lower": self.nfa_lower,
            "nfa_observed": self.nfa_observed,
            "nfa_certified": self.nfa_certified,
            "nfa_satisfied": self.nfa_satisfied,
            "nfa_tight": self.nfa_tight,
        }


@dataclass(frozen=True)
class _NfaPart:
    formula: int | None = None
    lower: int | None = None
    observed: int | None = None
    certified: bool | None = None


@dataclass(frozen=True)
class _Measured:
    formula: int
    observed: int
    lower: int | None = None
    nfa: _NfaPart = field(default_factory=_NfaPart)


@dataclass(frozen=True)
class _Context:
    solver: str
    budget: int
    with_nfa: bool

    def nsc_of(self, bitmaps: Sequence[Bitmap]) -> list[NscResult]:
        return [nsc(item, solver=self.solver, budget=self.budget) for item in bitmaps]

    def nfa_part(
        self,
        result: Bitmap,
        sides: Sequence[NscResult],
        formula: int,
        lower: int | None = None,
    ) -> _NfaPart:
        if not all(item.certified for item in sides):
            return _NfaPart(formula=formula, lower=lower, certified=False)
        observed = nsc(result, solver=self.solver, budget=self.budget)
        return _NfaPart(
            formula=formula,
            lower=lower,
            observed=observed.value,
            certified=observed.certified,
        )


def _union(operands: Sequence[Bitmap], context: _Context) -> _Measured:
    first, second = operands
    result = bm_or(first, second)
    left, right = dfa_widths(first), dfa_widths(second)
    inner = range(1, first.ell)
    formula = sum(left[i] * right[i] + left[i] + right[i] for i in inner) + 3
    nfa = _NfaPart()
    if context.with_nfa:
        sides = context.nsc_of(operands)
        nfa = context.nfa_part(result, sides, sides[0].value + sides[1].value - 2)
    return _Measured(formula=formula, observed=bitmap_dsc(result), nfa=nfa)


def _intersection(operands: Sequence[Bitmap], context: _Context) -> _Measured:
    first, second = operands
    result = bm_and(first, second)
    pairs = zip(dfa_widths(first), dfa_widths(second), strict=True)
    formula = sum(a * b for a, b in pairs) + 1
    nfa = _NfaPart()
    if context.with_nfa:
        sides = context.nsc_of(operands)
        nfa_pairs = zip(sides[0].widths, sides[1].widths, strict=True)
        nfa = context.nfa_part(result, sides, sum(a * b for a, b in nfa_pairs))
    return _Measured(formula=formula, observed=bitmap_dsc(result), nfa=nfa)


def _word_change(result: Bitmap, operand: Bitmap, context: _Context) -> _Measured:
    """Adding or removing one word moves the size by at most ``ell - 1`` either way."""
    ell = operand.ell
    m = bitmap_dsc(operand)
    nfa = _NfaPart()
    if context.with_nfa:
        sides = context.nsc_of([operand])
        n = sides[0].value
        nfa = context.nfa_part(result, sides, n + ell - 1, max(n - (ell - 1), 0))
    return _Measured(
        formula=m + ell - 1,
        observed=bitmap_dsc(result),
        lower=max(m - (ell - 1), 1),
        nfa=nfa,
    )


def _concat(operands: Sequence[Bitmap], context: _Context) -> _Measured:
    first, second = operands
    result = concat_bitmaps(first, second)
    nfa = _NfaPart()
    if context.with_nfa:
        sides = context.nsc_of(operands)
        nfa = context.nfa_part(result, sides, sides[0].value + sides[1].value - 1)
    return _Measured(
        formula=bitmap_dsc(first) + bitmap_dsc(second) - 2,
        observed=bitmap_dsc(result),
        nfa=nfa,
    )


def _block_complement(operand: Bitmap) -> _Measured:
    m = bitmap_dsc(operand)
    return _Measured(
        formula=m + operand.ell - 1,
        observed=bitmap_dsc(bm_not(operand)),
        lower=max(m - (operand.ell - 1), 1),
    )


def _reverse(operand: Bitmap, context: _Context) -> _Measured:
    """Reversal can blow up the DFA but never the NFA."""
    result = reverse_bitmap(operand)
    if operand.k >= 2:
        formula = campeanu_ho_bound(operand.k, operand.ell)[0]
    else:
        formula = operand.ell + 2
    nfa = _NfaPart()
    if context.with_nfa:
        sides = context.nsc_of([operand])
        nfa = context.nfa_part(result, sides, sides[0].value)
    return _Measured(formula=formula, observed=bitmap_dsc(result), nfa=nfa)


def _surgery(op: str, operand: Bitmap) -> _Measured:
    """Star, plus, stencil and complement, measured after minimization."""
    m = bitmap_dsc(operand)
    minimal = bitmap_to_min_dfa(operand)
    if op == "star":
        construction, formula = star_automaton(minimal), m - 1
    elif op == "plus":
        construction, formula = plus_automaton(minimal), m
    elif op == "stencil":
        construction, formula = stencil_automaton(minimal), m + operand.ell - 1
    else:
        construction, formula = complement_automaton(minimal), m
    observed = minimize_dfa(construction).num_states
    LOGGER.debug("%s construction %d states, minimal %d", op, construction.num_states, observed)
    return _Measured(formula=formula, observed=observed)


def _check_arity(op: str, operands: Sequence[Bitmap]) -> None:
    expected = 2 if op in _BINARY else 1
    if len(operands) != expected:
        raise ValueError(f"Operation {op} takes {expected} operand(s), got {len(operands)}.")


def check_operation_bounds(
    op: str,
    operands: Sequence[Bitmap],
    word: Word | None = None,
    *,
    solver: str = "exact",
    budget: int = DEFAULT_BUDGET,
    with_nfa: bool = True,
) -> BoundReport:
    """Build the result of ``op`` and compare its size with the operation's bound.

    NFA sizes are only compared when the exact solver certifies every operand.
    """
    validate_choice(op, "op", OPERATIONS)
    _check_arity(op, operands)
    context = _Context(solver=solver, budget=budget, with_nfa=with_nfa)
    first = operands[0]
    if op == "union":
        measured = _union(operands, context)
    elif op == "intersection":
        measured = _intersection(operands, context)
    elif op in _WORD_OPS:
        if word is None:
            raise ValueError(f"Operation {op} needs a word.")
        changed = add_word(first, word) if op == "word-add" else remove_word(first, word)
        measured = _word_change(changed, first, context)
    elif op == "concat":
        measured = _concat(operands, context)
    elif op == "block-complement":
        measured = _block_complement(first)
    elif op == "reverse":
        measured = _reverse(first, context)
    else:
        measured = _surgery(op, first)
    report = BoundReport(
        subject=f"{op} over {first.params}",
        formula_value=measured.formula,
        observed_value=measured.observed,
        lower_value=measured.lower,
        nfa_formula=measured.nfa.formula,
        nfa_lower=measured.nfa.lower,
        nfa_observed=measured.nfa.observed,
        nfa_certified=measured.nfa.certified,
    )
    if not report.satisfied:
        LOGGER.warning("bound violated: %s", report.to_dict())
    return report


def dsc_of_reversal(bitmap: Bitmap) -> int:
    """``dsc`` of the reversed language, through the reversed minimal DFA."""
    if bitmap.is_empty():
        return 1
    return dsc(reverse_automaton(bitmap_to_min_dfa(bitmap)))
