"""Ranked acyclic automata for block languages and general finite automata.

State ids are dense integers. Ranked automata keep one rank per state and step
from rank ``r`` to rank ``r - 1`` on every transition. General automata may be
cyclic; they come out of star, plus, stencil and complement.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

from blockset.core.blockcore import (
    BlockParams,
    Word,
    bits_to_string,
    join_blocks,
)
from blockset.core.errors import (
    BadSymbolError,
    IndexOutOfRangeError,
    NotDeterministicError,
    NotRankedError,
    ParamsMismatchError,
)
from blockset.logging_utils import get_logger

LOGGER = get_logger()

Transition = tuple[int, int, int]
_EMPTY: frozenset[int] = frozenset()


def _build_delta(transitions: Iterable[Transition]) -> dict[tuple[int, int], frozenset[int]]:
    grouped: dict[tuple[int, int], set[int]] = {}
    for source, symbol, target in transitions:
        grouped.setdefault((source, symbol), set()).add(target)
    return {key: frozenset(value) for key, value in grouped.items()}


def _check_transitions(transitions: Iterable[Transition], num_states: int, k: int) -> None:
    for source, symbol, target in transitions:
        if not (0 <= source < num_states and 0 <= target < num_states):
            raise IndexOutOfRangeError(
                f"Transition {source} -{symbol}-> {target} uses an unknown state."
            )
        if not 0 <= symbol < k:
            raise BadSymbolError(f"Transition symbol {symbol} outside alphabet of size {k}.")


@dataclass(frozen=True)
class RankedAutomaton:
    """Acyclic automaton whose states are partitioned into ranks ``0..ell``."""

    params: BlockParams
    ranks: tuple[int, ...]
    initial: frozenset[int]
    final: frozenset[int]
    transitions: frozenset[Transition]

    def __post_init__(self) -> None:
        for state in self.initial | self.final:
            if not 0 <= state < len(self.ranks):
                raise IndexOutOfRangeError(f"Unknown state id {state}.")
        _check_transitions(self.transitions, len(self.ranks), self.params.k)

    @classmethod
    def empty(cls, params: BlockParams) -> RankedAutomaton:
        return cls(params, (), _EMPTY, _EMPTY, frozenset())

    @property
    def num_states(self) -> int:
        return len(self.ranks)

    @cached_property
    def delta(self) -> dict[tuple[int, int], frozenset[int]]:
        return _build_delta(self.transitions)

    def step(self, state: int, symbol: int) -> frozenset[int]:
        return self.delta.get((state, symbol), _EMPTY)

    @property
    def is_deterministic(self) -> bool:
        return len(self.initial) == 1 and all(len(targets) <= 1 for targets in self.delta.values())

    def states_of_rank(self, rank: int) -> list[int]:
        return [state for state, value in enumerate(self.ranks) if value == rank]

    def check_ranked(self) -> None:
        """Raise :class:`NotRankedError` unless the block-language rank discipline holds."""
        ell = self.params.ell
        for state, rank in enumerate(self.ranks):
            if not 0 <= rank <= ell:
                raise NotRankedError(f"State {state} has rank {rank} outside [0, {ell}].")
        for source, symbol, target in self.transitions:
            if self.ranks[target] != self.ranks[source] - 1:
                raise NotRankedError(
                    f"Transition {source} -{symbol}-> {target} goes from rank "
                    f"{self.ranks[source]} to rank {self.ranks[target]}."
                )
        for state in self.initial:
            if self.ranks[state] != ell:
                raise NotRankedError(f"Initial state {state} does not have rank {ell}.")
        for state in self.final:
            if self.ranks[state] != 0:
                raise NotRankedError(f"Final state {state} does not have rank 0.")

    def accepts(self, word: Word) -> bool:
        current = set(self.initial)
        for symbol in word.symbols:
            current = {target for state in current for target in self.step(state, symbol)}
            if not current:
                return False
        return bool(current & self.final)


@dataclass(frozen=True)
class GeneralAutomaton:
    """Finite automaton over ``k`` symbols with a single initial state; may be cyclic."""

    k: int
    num_states: int
    initial: int
    final: frozenset[int]
    transitions: frozenset[Transition]

    def __post_init__(self) -> None:
        if self.num_states < 1:
            raise ValueError("A general automaton needs at least its initial state.")
        for state in {self.initial} | self.final:
            if not 0 <= state < self.num_states:
                raise IndexOutOfRangeError(f"Unknown state id {state}.")
        _check_transitions(self.transitions, self.num_states, self.k)

    @cached_property
    def delta(self) -> dict[tuple[int, int], frozenset[int]]:
        return _build_delta(self.transitions)

    def step(self, state: int, symbol: int) -> frozenset[int]:
        return self.delta.get((state, symbol), _EMPTY)

    @property
    def is_deterministic(self) -> bool:
        return all(len(targets) <= 1 for targets in self.delta.values())

    @property
    def is_complete(self) -> bool:
        return all(
            (state, symbol) in self.delta
            for state in range(self.num_states)
            for symbol in range(self.k)
        )

    def accepts(self, word: Word) -> bool:
        current = {self.initial}
        for symbol in word.symbols:
            current = {target for state in current for target in self.step(state, symbol)}
            if not current:
                return False
        return bool(current & self.final)

    def completed(self) -> GeneralAutomaton:
        """Return the automaton with missing transitions sent to a fresh sink."""
        if self.is_complete:
            return self
        sink = self.num_states
        extra = {
            (state, symbol, sink)
            for state in range(self.num_states + 1)
            for symbol in range(self.k)
            if state == sink or (state, symbol) not in self.delta
        }
        return GeneralAutomaton(
            k=self.k,
            num_states=self.num_states + 1,
            initial=self.initial,
            final=self.final,
            transitions=self.transitions | frozenset(extra),
        )


@dataclass(frozen=True)
class WidthProfile:
    """Trim state counts per rank, index ``i`` for rank ``i``."""

    widths: tuple[int, ...]
    has_sink: bool

    @property
    def total(self) -> int:
        return sum(self.widths)

    @property
    def width(self) -> int:
        return max(self.widths, default=0)


def _relabel(
    a: RankedAutomaton,
    order: list[int],
) -> RankedAutomaton:
    """Keep the states in ``order`` and number them by their position in it."""
    new_id = {old: new for new, old in enumerate(order)}
    return RankedAutomaton(
        params=a.params,
        ranks=tuple(a.ranks[old] for old in order),
        initial=frozenset(new_id[s] for s in a.initial if s in new_id),
        final=frozenset(new_id[s] for s in a.final if s in new_id),
        transitions=frozenset(
            (new_id[source], symbol, new_id[target])
            for source, symbol, target in a.transitions
            if source in new_id and target in new_id
        ),
    )


def right_languages(a: RankedAutomaton) -> dict[int, int]:
    """Bitmap of the right language of every state, computed rank by rank."""
    a.check_ranked()
    k = a.params.k
    values: dict[int, int] = {}
    for state in sorted(range(a.num_states), key=lambda s: a.ranks[s]):
        rank = a.ranks[state]
        if rank == 0:
            values[state] = 1 if state in a.final else 0
            continue
        blocks = []
        for symbol in range(k):
            block = 0
            for target in a.step(state, symbol):
                block |= values[target]
            blocks.append(block)
        values[state] = join_blocks(blocks, k ** (rank - 1))
    return values


def canonical_order(a: RankedAutomaton) -> list[int]:
    """Rank descending, then least accepted word, then right language."""
    rights = right_languages(a)
    k = a.params.k

    def key(state: int) -> tuple[int, int, int, str, int]:
        value = rights[state]
        rank = a.ranks[state]
        if value == 0:
            return (-rank, 1, 0, "", state)
        least = (value & -value).bit_length() - 1
        return (-rank, 0, least, bits_to_string(value, k**rank), state)

    return sorted(range(a.num_states), key=key)


def canonicalize(a: RankedAutomaton) -> RankedAutomaton:
    return _relabel(a, canonical_order(a))


def _reachable(a: RankedAutomaton) -> set[int]:
    seen = set(a.initial)
    queue = deque(sorted(a.initial))
    while queue:
        state = queue.popleft()
        for symbol in range(a.params.k):
            for target in a.step(state, symbol):
                if target not in seen:
                    seen.add(target)
                    queue.append(target)
    return seen


def _coreachable(a: RankedAutomaton) -> set[int]:
    inverse: dict[int, set[int]] = {}
    for source, _symbol, target in a.transitions:
        inverse.setdefault(target, set()).add(source)
    seen = set(a.final)
    queue = deque(sorted(a.final))
    while queue:
        state = queue.popleft()
        for source in inverse.get(state, ()):
            if source not in seen:
                seen.add(source)
                queue.append(source)
    return seen


def trim(a: RankedAutomaton) -> RankedAutomaton:
    """Drop states that are not on a path from an initial to a final state."""
    useful = _reachable(a) & _coreachable(a)
    result = _relabel(a, sorted(useful))
    if result.num_states < a.num_states:
        LOGGER.debug("trim removed %d of %d states", a.num_states - result.num_states, a.num_states)
    return canonicalize(result)


def determinize(a: RankedAutomaton) -> RankedAutomaton:
    """Subset construction over reachable subsets; empty subsets stay implicit."""
    if not a.initial:
        return RankedAutomaton.empty(a.params)
    start = frozenset(a.initial)
    index: dict[frozenset[int], int] = {start: 0}
    subsets = [start]
    transitions: set[Transition] = set()
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for symbol in range(a.params.k):
            target = frozenset(t for state in subset for t in a.step(state, symbol))
            if not target:
                continue
            if target not in index:
                index[target] = len(subsets)
                subsets.append(target)
                queue.append(target)
            transitions.add((index[subset], symbol, index[target]))
    ranks = []
    for subset in subsets:
        member_ranks = {a.ranks[state] for state in subset}
        if len(member_ranks) != 1:
            raise NotRankedError(f"Subset {sorted(subset)} mixes ranks {sorted(member_ranks)}.")
        ranks.append(member_ranks.pop())
    result = RankedAutomaton(
        params=a.params,
        ranks=tuple(ranks),
        initial=frozenset({0}),
        final=frozenset(i for i, subset in enumerate(subsets) if subset & a.final),
        transitions=frozenset(transitions),
    )
    LOGGER.debug("determinize: %d states -> %d subsets", a.num_states, len(subsets))
    return canonicalize(result)


def minimize_ranked(a: RankedAutomaton) -> RankedAutomaton:
    """Merge equivalent states of a deterministic ranked automaton rank by rank."""
    if a.initial and not a.is_deterministic:
        raise NotDeterministicError("minimize_ranked needs a deterministic automaton.")
    trimmed = trim(a)
    class_of: dict[int, int] = {}
    signatures: dict[tuple[int, bool, tuple[int, ...]], int] = {}
    representatives: list[int] = []
    for state in sorted(range(trimmed.num_states), key=lambda s: (trimmed.ranks[s], s)):
        successors = tuple(
            class_of[next(iter(targets))] if (targets := trimmed.step(state, symbol)) else -1
            for symbol in range(trimmed.params.k)
        )
        signature = (trimmed.ranks[state], state in trimmed.final, successors)
        if signature not in signatures:
            signatures[signature] = len(representatives)
            representatives.append(state)
        class_of[state] = signatures[signature]
    merged = RankedAutomaton(
        params=trimmed.params,
        ranks=tuple(trimmed.ranks[state] for state in representatives),
        initial=frozenset(class_of[state] for state in trimmed.initial),
        final=frozenset(class_of[state] for state in trimmed.final),
        transitions=frozenset(
            (class_of[source], symbol, class_of[target])
            for source, symbol, target in trimmed.transitions
        ),
    )
    return canonicalize(merged)


def as_general(a: RankedAutomaton | GeneralAutomaton) -> GeneralAutomaton:
    """View a ranked automaton as a general one with a single initial state."""
    if isinstance(a, GeneralAutomaton):
        return a
    if not a.initial:
        return GeneralAutomaton(a.params.k, 1, 0, frozenset(), frozenset())
    if len(a.initial) > 1:
        a = determinize(a)
    return GeneralAutomaton(
        k=a.params.k,
        num_states=a.num_states,
        initial=next(iter(a.initial)),
        final=a.final,
        transitions=a.transitions,
    )


def determinize_general(a: GeneralAutomaton) -> GeneralAutomaton:
    """Subset construction for possibly cyclic automata."""
    if a.is_deterministic:
        return a
    start = frozenset({a.initial})
    index: dict[frozenset[int], int] = {start: 0}
    subsets = [start]
    transitions: set[Transition] = set()
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for symbol in range(a.k):
            target = frozenset(t for state in subset for t in a.step(state, symbol))
            if not target:
                continue
            if target not in index:
                index[target] = len(subsets)
                subsets.append(target)
                queue.append(target)
            transitions.add((index[subset], symbol, index[target]))
    return GeneralAutomaton(
        k=a.k,
        num_states=len(subsets),
        initial=0,
        final=frozenset(i for i, subset in enumerate(subsets) if subset & a.final),
        transitions=frozenset(transitions),
    )


def _hopcroft_blocks(a: GeneralAutomaton, states: set[int]) -> dict[int, int]:
    """Partition refinement on a complete DFA restricted to ``states``."""
    finals = frozenset(s for s in states if s in a.final)
    others = frozenset(states - finals)
    partition = {block for block in (finals, others) if block}
    block_of = {state: block for block in partition for state in block}
    inverse: dict[tuple[int, int], set[int]] = {}
    for source, symbol, target in a.transitions:
        if source in states:
            inverse.setdefault((symbol, target), set()).add(source)
    worklist: set[frozenset[int]] = set()
    if len(partition) == 2:
        worklist.add(finals if len(finals) <= len(others) else others)
    while worklist:
        splitter = worklist.pop()
        for symbol in range(a.k):
            affected: dict[frozenset[int], set[int]] = {}
            for target in splitter:
                for source in inverse.get((symbol, target), ()):
                    affected.setdefault(block_of[source], set()).add(source)
            for block, overlap in affected.items():
                if len(overlap) == len(block):
                    continue
                inside = frozenset(overlap)
                outside = block - inside
                partition.remove(block)
                partition.update((inside, outside))
                for state in inside:
                    block_of[state] = inside
                for state in outside:
                    block_of[state] = outside
                if block in worklist:
                    worklist.remove(block)
                    worklist.update((inside, outside))
                else:
                    worklist.add(inside if len(inside) <= len(outside) else outside)
    labels: dict[frozenset[int], int] = {}
    return {state: labels.setdefault(block_of[state], len(labels)) for state in sorted(states)}


def _bfs_numbering(a: GeneralAutomaton) -> GeneralAutomaton:
    order = {a.initial: 0}
    queue = deque([a.initial])
    while queue:
        state = queue.popleft()
        for symbol in range(a.k):
            for target in sorted(a.step(state, symbol)):
                if target not in order:
                    order[target] = len(order)
                    queue.append(target)
    return GeneralAutomaton(
        k=a.k,
        num_states=len(order),
        initial=0,
        final=frozenset(order[s] for s in a.final if s in order),
        transitions=frozenset(
            (order[source], symbol, order[target])
            for source, symbol, target in a.transitions
            if source in order
        ),
    )


def minimize_dfa(a: GeneralAutomaton) -> GeneralAutomaton:
    """Minimal complete DFA, numbered breadth first from the initial state."""
    if not a.is_deterministic:
        raise NotDeterministicError("minimize_dfa needs a deterministic automaton.")
    complete = _bfs_numbering(a.completed())
    blocks = _hopcroft_blocks(complete, set(range(complete.num_states)))
    quotient = GeneralAutomaton(
        k=complete.k,
        num_states=len(set(blocks.values())),
        initial=blocks[complete.initial],
        final=frozenset(blocks[s] for s in complete.final),
        transitions=frozenset(
            (blocks[source], symbol, blocks[target])
            for source, symbol, target in complete.transitions
        ),
    )
    result = _bfs_numbering(quotient)
    LOGGER.debug("minimize_dfa: %d -> %d states", a.num_states, result.num_states)
    return result


def _params_of(a: RankedAutomaton | GeneralAutomaton) -> tuple[int, int | None]:
    if isinstance(a, RankedAutomaton):
        return a.params.k, a.params.ell
    return a.k, None


AnyAutomaton = RankedAutomaton | GeneralAutomaton


def equivalent(a: AnyAutomaton, b: AnyAutomaton) -> bool:
    """Language equality via minimal complete DFAs and their BFS numbering."""
    k_a, ell_a = _params_of(a)
    k_b, ell_b = _params_of(b)
    if k_a != k_b or (ell_a is not None and ell_b is not None and ell_a != ell_b):
        raise ParamsMismatchError(
            f"Cannot compare automata over k={k_a}, ell={ell_a} and k={k_b}, ell={ell_b}."
        )
    left = minimize_dfa(determinize_general(as_general(a)))
    right = minimize_dfa(determinize_general(as_general(b)))
    return left == right


def width_profile(a: RankedAutomaton) -> WidthProfile:
    """Per-rank trim state counts; deterministic machines count a sink on completion."""
    trimmed = trim(a)
    widths = [0] * (a.params.ell + 1)
    for rank in trimmed.ranks:
        widths[rank] += 1
    return WidthProfile(widths=tuple(widths), has_sink=a.is_deterministic)


def dsc(a: RankedAutomaton | GeneralAutomaton) -> int:
    """States of the minimal complete DFA, sink included."""
    if isinstance(a, RankedAutomaton):
        minimal = minimize_ranked(determinize(a))
        return minimal.num_states + 1
    return minimize_dfa(determinize_general(a)).num_states


def nsc_upper(a: RankedAutomaton) -> int:
    """State count of the trimmed automaton (no sink)."""
    return trim(a).num_states


def reverse_automaton(a: RankedAutomaton) -> RankedAutomaton:
    """Reverse every transition and swap initial and final states."""
    a.check_ranked()
    ell = a.params.ell
    result = RankedAutomaton(
        params=a.params,
        ranks=tuple(ell - rank for rank in a.ranks),
        initial=a.final,
        final=a.initial,
        transitions=frozenset(
            (target, symbol, source) for source, symbol, target in a.transitions
        ),
    )
    return trim(result)
