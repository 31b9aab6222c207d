"""Text formats for bitmaps (BLK1), automata (AUT1) and cover instances (COV1).

Emission is deterministic: states sorted by id, transitions sorted
lexicographically, cover lines in canonical bit-vector order.
"""

from __future__ import annotations

from pathlib import Path

from blockset.core.automata import AnyAutomaton, GeneralAutomaton, RankedAutomaton
from blockset.core.blockcore import Bitmap, BlockParams, bits_to_string, string_to_bits
from blockset.core.cover import CoverInstance
from blockset.core.errors import FormatError

BLK_MAGIC = "BLK1"
AUT_MAGIC = "AUT1"
COV_MAGIC = "COV1"


def _content_lines(text: str) -> list[tuple[int, str]]:
    numbered = enumerate(text.splitlines(), 1)
    return [(number, line.strip()) for number, line in numbered if line.strip()]


def _parse_int(token: str, what: str, line: int) -> int:
    try:
        return int(token)
    except ValueError as exc:
        raise FormatError(f"{what} must be an integer, got {token!r}.", line) from exc


def _header(lines: list[tuple[int, str]], magic: str, arity: int) -> tuple[int, list[str]]:
    if not lines:
        raise FormatError(f"Missing {magic} header.", 1)
    number, text = lines[0]
    parts = text.split()
    if parts[0] != magic:
        raise FormatError(f"Expected {magic} header, got {parts[0]!r}.", number)
    if len(parts) != arity + 1:
        raise FormatError(f"{magic} header takes {arity} fields.", number)
    return number, parts[1:]


def dump_bitmap(bitmap: Bitmap) -> str:
    return f"{BLK_MAGIC} {bitmap.k} {bitmap.ell}\n{bitmap.to_string()}\n"


def load_bitmap(text: str) -> Bitmap:
    lines = _content_lines(text)
    number, (k_text, ell_text) = _header(lines, BLK_MAGIC, 2)
    k = _parse_int(k_text, "k", number)
    ell = _parse_int(ell_text, "ell", number)
    if k < 1 or ell < 1:
        raise FormatError("k and ell must be at least 1.", number)
    try:
        params = BlockParams(k, ell)
    except ValueError as exc:
        raise FormatError(str(exc), number) from exc
    if len(lines) != 2:
        raise FormatError("Expected exactly one bitmap line after the header.", number + 1)
    number, body = lines[1]
    if len(body) != params.universe_size:
        raise FormatError(
            f"Bitmap has {len(body)} characters, expected {params.universe_size}.", number
        )
    try:
        return Bitmap.from_string(body, params)
    except ValueError as exc:
        raise FormatError(str(exc), number) from exc


def read_bitmap(path: Path) -> Bitmap:
    return load_bitmap(path.read_text(encoding="utf-8"))


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def write_bitmap(path: Path, bitmap: Bitmap) -> None:
    _write_text(path, dump_bitmap(bitmap))


def dump_automaton(automaton: AnyAutomaton) -> str:
    """Serialize a ranked or general automaton; general ones have ``ell`` written as ``-``."""
    lines: list[str] = []
    if isinstance(automaton, RankedAutomaton):
        lines.append(f"{AUT_MAGIC} {automaton.params.k} {automaton.params.ell} ranked")
        initial = automaton.initial
        for state, rank in enumerate(automaton.ranks):
            flags = [f"rank={rank}"]
            flags += ["initial"] if state in initial else []
            flags += ["final"] if state in automaton.final else []
            lines.append(" ".join([f"state {state}", *flags]))
    else:
        lines.append(f"{AUT_MAGIC} {automaton.k} - general")
        for state in range(automaton.num_states):
            flags = ["initial"] if state == automaton.initial else []
            flags += ["final"] if state in automaton.final else []
            lines.append(" ".join([f"state {state}", *flags]))
    for source, symbol, target in sorted(automaton.transitions):
        lines.append(f"trans {source} {symbol} {target}")
    return "\n".join(lines) + "\n"


def _parse_state(
    parts: list[str], number: int, ranked: bool
) -> tuple[int, int | None, bool, bool]:
    state = _parse_int(parts[1], "state id", number)
    rank: int | None = None
    initial = final = False
    for flag in parts[2:]:
        if flag.startswith("rank="):
            rank = _parse_int(flag.removeprefix("rank="), "rank", number)
        elif flag == "initial":
            initial = True
        elif flag == "final":
            final = True
        else:
            raise FormatError(f"Unknown state flag {flag!r}.", number)
    if ranked and rank is None:
        raise FormatError(f"Ranked state {state} has no rank.", number)
    if not ranked and rank is not None:
        raise FormatError("General automata do not carry ranks.", number)
    return state, rank, initial, final


def load_automaton(text: str) -> AnyAutomaton:
    lines = _content_lines(text)
    number, (k_text, ell_text, kind) = _header(lines, AUT_MAGIC, 3)
    k = _parse_int(k_text, "k", number)
    if kind not in ("ranked", "general"):
        raise FormatError(f"Automaton kind must be ranked or general, got {kind!r}.", number)
    ranked = kind == "ranked"
    if ranked == (ell_text == "-"):
        raise FormatError("Ranked automata need ell; general automata use '-'.", number)
    ranks: dict[int, int | None] = {}
    initial: set[int] = set()
    final: set[int] = set()
    transitions: set[tuple[int, int, int]] = set()
    for number, line in lines[1:]:
        parts = line.split()
        if parts[0] == "state" and len(parts) >= 2:
            state, rank, is_initial, is_final = _parse_state(parts, number, ranked)
            if state in ranks:
                raise FormatError(f"State {state} is declared twice.", number)
            ranks[state] = rank
            if is_initial:
                initial.add(state)
            if is_final:
                final.add(state)
        elif parts[0] == "trans" and len(parts) == 4:
            source, symbol, target = (
                _parse_int(token, "transition field", number) for token in parts[1:]
            )
            transitions.add((source, symbol, target))
        else:
            raise FormatError(f"Unrecognized line {line!r}.", number)
    if sorted(ranks) != list(range(len(ranks))):
        raise FormatError("State ids must be dense and start at 0.")
    try:
        if ranked:
            ell = _parse_int(ell_text, "ell", 1)
            automaton = RankedAutomaton(
                params=BlockParams(k, ell),
                ranks=tuple(ranks[state] or 0 for state in range(len(ranks))),
                initial=frozenset(initial),
                final=frozenset(final),
                transitions=frozenset(transitions),
            )
            automaton.check_ranked()
            return automaton
        if len(initial) != 1:
            raise FormatError("General automata need exactly one initial state.")
        return GeneralAutomaton(
            k=k,
            num_states=len(ranks),
            initial=initial.pop(),
            final=frozenset(final),
            transitions=frozenset(transitions),
        )
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_automaton(path: Path) -> AnyAutomaton:
    return load_automaton(path.read_text(encoding="utf-8"))


def write_automaton(path: Path, automaton: AnyAutomaton) -> None:
    _write_text(path, dump_automaton(automaton))


def dump_cover_instance(instance: CoverInstance) -> str:
    width = instance.width
    lines = [f"{COV_MAGIC} {width}"]
    lines += [f"target {bits_to_string(v, width)}" for v in instance.ordered(instance.targets)]
    lines += [f"cand {bits_to_string(v, width)}" for v in instance.ordered(instance.candidates)]
    return "\n".join(lines) + "\n"


def load_cover_instance(text: str) -> CoverInstance:
    """Parse a COV1 document; without ``cand`` lines the targets are the candidates."""
    lines = _content_lines(text)
    number, (width_text,) = _header(lines, COV_MAGIC, 1)
    width = _parse_int(width_text, "width", number)
    targets: list[str] = []
    candidates: list[str] = []
    for number, line in lines[1:]:
        parts = line.split()
        if len(parts) != 2 or parts[0] not in ("target", "cand"):
            raise FormatError(f"Unrecognized line {line!r}.", number)
        bits = parts[1]
        if len(bits) != width or set(bits) - {"0", "1"}:
            raise FormatError(f"Expected {width} bits of 0/1, got {bits!r}.", number)
        (targets if parts[0] == "target" else candidates).append(bits)
    if not candidates:
        candidates = list(targets)
    try:
        return CoverInstance(
            width=width,
            targets=frozenset(string_to_bits(bits) for bits in targets),
            candidates=frozenset(string_to_bits(bits) for bits in candidates),
        )
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def read_cover_instance(path: Path) -> CoverInstance:
    return load_cover_instance(path.read_text(encoding="utf-8"))


def write_cover_instance(path: Path, instance: CoverInstance) -> None:
    _write_text(path, dump_cover_instance(instance))
