"""Operations on block languages.

Block-closed operations work on bitmaps. Star, plus, stencil and complement
leave the block and are built by transition surgery on minimal automata.
"""

from __future__ import annotations

import numpy as np
import numpy.typing as npt

from blockset.core.automata import (
    GeneralAutomaton,
    RankedAutomaton,
    Transition,
    as_general,
    trim,
)
from blockset.core.blockcore import (
    Bitmap,
    BlockParams,
    Word,
    index_to_word,
    set_bit_indices,
    word_to_index,
)
from blockset.core.errors import (
    AutomatonShapeError,
    EmptyLanguageError,
    NotDeterministicError,
    ParamsMismatchError,
)

BitArray = npt.NDArray[np.uint8]


def _same_params(first: Bitmap, second: Bitmap) -> None:
    if first.params != second.params:
        raise ParamsMismatchError(
            f"Operands over {first.params} and {second.params} cannot be combined."
        )


def bm_and(first: Bitmap, second: Bitmap) -> Bitmap:
    _same_params(first, second)
    return Bitmap(first.params, first.bits & second.bits)


def bm_or(first: Bitmap, second: Bitmap) -> Bitmap:
    _same_params(first, second)
    return Bitmap(first.params, first.bits | second.bits)


def bm_not(bitmap: Bitmap) -> Bitmap:
    """Block complement ``Sigma**ell`` minus the language."""
    return Bitmap(bitmap.params, bitmap.bits ^ ((1 << len(bitmap)) - 1))


def to_array(bitmap: Bitmap) -> BitArray:
    size = len(bitmap)
    raw = bitmap.bits.to_bytes((size + 7) // 8, "little")
    unpacked = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return unpacked[:size]


def from_array(values: BitArray, params: BlockParams) -> Bitmap:
    packed = np.packbits(values.astype(np.uint8), bitorder="little")
    return Bitmap(params, int.from_bytes(packed.tobytes(), "little"))


def perfect_shuffle(values: BitArray, parts: int, block: int) -> BitArray:
    """Interleave ``parts`` equal slices of ``values`` in blocks of ``block`` entries."""
    size = values.shape[0]
    if size % (parts * block):
        raise ValueError(f"Cannot shuffle {size} entries into {parts} parts of blocks {block}.")
    return values.reshape(parts, size // (parts * block), block).transpose(1, 0, 2).reshape(-1)


def reverse_bitmap(bitmap: Bitmap) -> Bitmap:
    """Bitmap of the reversed language via iterated perfect shuffles."""
    k = bitmap.k
    values = to_array(bitmap)
    for level in range(1, bitmap.ell):
        values = perfect_shuffle(values, k, k ** (level - 1))
    return from_array(values, bitmap.params)


def reverse_by_index(bitmap: Bitmap) -> Bitmap:
    """Move bit ``ind(w)`` to ``ind(reverse(w))`` word by word."""
    bits = 0
    for index in set_bit_indices(bitmap.bits):
        word = index_to_word(index, bitmap.params)
        bits |= 1 << word_to_index(word.reversed(), bitmap.params)
    return Bitmap(bitmap.params, bits)


def add_word(bitmap: Bitmap, word: Word) -> Bitmap:
    return Bitmap(bitmap.params, bitmap.bits | 1 << word_to_index(word, bitmap.params))


def remove_word(bitmap: Bitmap, word: Word) -> Bitmap:
    return Bitmap(bitmap.params, bitmap.bits & ~(1 << word_to_index(word, bitmap.params)))


def concat_bitmaps(first: Bitmap, second: Bitmap) -> Bitmap:
    """Each 1 of ``first`` becomes a copy of ``second``, each 0 a zero block."""
    if first.k != second.k:
        raise ParamsMismatchError(
            f"Concatenation needs one alphabet, got k={first.k} and k={second.k}."
        )
    params = BlockParams(first.k, first.ell + second.ell)
    width = len(second)
    bits = 0
    for index in set_bit_indices(first.bits):
        bits |= second.bits << (index * width)
    return Bitmap(params, bits)


def _surgery_input(automaton: RankedAutomaton) -> tuple[RankedAutomaton, int, int]:
    trimmed = trim(automaton)
    if trimmed.num_states == 0:
        raise EmptyLanguageError("The automaton accepts no word.")
    if len(trimmed.initial) != 1 or len(trimmed.final) != 1:
        raise AutomatonShapeError(
            "Expected one initial and one final state, got "
            f"{len(trimmed.initial)} and {len(trimmed.final)}."
        )
    return trimmed, next(iter(trimmed.initial)), next(iter(trimmed.final))


def _completed_transitions(trimmed: RankedAutomaton) -> tuple[int, set[Transition]]:
    """Transitions of a deterministic machine with a sink appended; NFAs stay as they are."""
    transitions = set(trimmed.transitions)
    if not trimmed.is_deterministic:
        return trimmed.num_states, transitions
    sink = trimmed.num_states
    for state in range(sink + 1):
        for symbol in range(trimmed.params.k):
            if state == sink or not trimmed.step(state, symbol):
                transitions.add((state, symbol, sink))
    return sink + 1, transitions


def star_automaton(automaton: RankedAutomaton) -> GeneralAutomaton:
    """Drop the final state, send its in-transitions to the initial state and accept there."""
    trimmed, start, accept = _surgery_input(automaton)
    count, transitions = _completed_transitions(trimmed)
    keep = [state for state in range(count) if state != accept]
    new_id = {old: new for new, old in enumerate(keep)}
    moved = {
        (new_id[source], symbol, new_id[start if target == accept else target])
        for source, symbol, target in transitions
        if source != accept
    }
    return GeneralAutomaton(
        k=trimmed.params.k,
        num_states=len(keep),
        initial=new_id[start],
        final=frozenset({new_id[start]}),
        transitions=frozenset(moved),
    )


def plus_automaton(automaton: RankedAutomaton) -> GeneralAutomaton:
    """The final state takes over the out-transitions of the initial state."""
    trimmed, start, accept = _surgery_input(automaton)
    count, transitions = _completed_transitions(trimmed)
    kept = {edge for edge in transitions if edge[0] != accept}
    copied = {(accept, symbol, target) for source, symbol, target in kept if source == start}
    return GeneralAutomaton(
        k=trimmed.params.k,
        num_states=count,
        initial=start,
        final=frozenset({accept}),
        transitions=frozenset(kept | copied),
    )


def stencil_automaton(automaton: RankedAutomaton) -> GeneralAutomaton:
    """Accept the language plus every word whose length differs from ``ell``.

    Sink-bound transitions from a rank ``r`` state enter a chain ``p_{r-1} ..
    p_0`` that rejects exactly the words completing length ``ell``; the final
    state absorbs every longer word.
    """
    if automaton.initial and not automaton.is_deterministic:
        raise NotDeterministicError("The stencil construction needs a DFA.")
    trimmed, _start, accept = _surgery_input(automaton)
    k = trimmed.params.k
    ell = trimmed.params.ell
    base = trimmed.num_states
    chain = [base + i for i in range(ell)]
    transitions = set(trimmed.transitions)
    for state, rank in enumerate(trimmed.ranks):
        for symbol in range(k):
            if trimmed.step(state, symbol):
                continue
            target = accept if rank == 0 else chain[rank - 1]
            transitions.add((state, symbol, target))
    for i, state in enumerate(chain):
        target = accept if i == 0 else chain[i - 1]
        transitions.update((state, symbol, target) for symbol in range(k))
    everything = frozenset(range(base + ell))
    return GeneralAutomaton(
        k=k,
        num_states=base + ell,
        initial=next(iter(trimmed.initial)),
        final=everything - {chain[0]},
        transitions=frozenset(transitions),
    )


def complement_automaton(automaton: GeneralAutomaton | RankedAutomaton) -> GeneralAutomaton:
    """Swap final and non-final states of the completed DFA."""
    if isinstance(automaton, RankedAutomaton) and len(automaton.initial) > 1:
        raise NotDeterministicError("Complementation needs a DFA.")
    general = as_general(automaton)
    if not general.is_deterministic:
        raise NotDeterministicError("Complementation needs a DFA.")
    complete = general.completed()
    return GeneralAutomaton(
        k=complete.k,
        num_states=complete.num_states,
        initial=complete.initial,
        final=frozenset(range(complete.num_states)) - complete.final,
        transitions=complete.transitions,
    )
