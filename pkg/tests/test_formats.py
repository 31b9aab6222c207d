"""Tests for the BLK1, AUT1 and COV1 text formats."""

from __future__ import annotations

from pathlib import Path

import pytest

from blockset.core.automata import GeneralAutomaton, RankedAutomaton, equivalent
from blockset.core.blockcore import Bitmap, BlockParams
from blockset.core.cover import min_cover
from blockset.core.errors import FormatError
from blockset.core.formats import (
    dump_automaton,
    dump_bitmap,
    dump_cover_instance,
    load_automaton,
    load_bitmap,
    load_cover_instance,
    read_automaton,
    read_bitmap,
    read_cover_instance,
    write_automaton,
    write_bitmap,
    write_cover_instance,
)
from blockset.core.langops import star_automaton
from blockset.core.synthesis import bitmap_to_min_dfa, bitmap_to_min_nfa

EXAMPLE = Bitmap.from_string("1011011100011110", BlockParams(2, 4))


def test_bitmap_document_layout() -> None:
    assert dump_bitmap(EXAMPLE) == "BLK1 2 4\n1011011100011110\n"


def test_bitmap_files_round_trip(tmp_path: Path) -> None:
    path = tmp_path / "example.blk"
    write_bitmap(path, EXAMPLE)
    assert read_bitmap(path) == EXAMPLE


def test_bitmap_loader_ignores_blank_lines() -> None:
    assert load_bitmap("\nBLK1 2 2\n\n0110\n\n").to_string() == "0110"


@pytest.mark.parametrize(
    ("text", "line"),
    [
        ("BLK2 2 2\n0110\n", 1),
        ("BLK1 2\n0110\n", 1),
        ("BLK1 two 2\n0110\n", 1),
        ("BLK1 0 2\n0110\n", 1),
        ("BLK1 2 2\n011\n", 2),
        ("BLK1 2 2\n01x0\n", 2),
        ("BLK1 2 2\n0110\n0110\n", 2),
    ],
)
def test_bitmap_loader_reports_line_numbers(text: str, line: int) -> None:
    with pytest.raises(FormatError) as excinfo:
        load_bitmap(text)
    assert excinfo.value.line == line
    assert str(excinfo.value).startswith(f"line {line}:")


def test_empty_document_is_rejected() -> None:
    with pytest.raises(FormatError):
        load_bitmap("")


def test_ranked_automaton_round_trip(tmp_path: Path) -> None:
    for automaton in (bitmap_to_min_dfa(EXAMPLE), bitmap_to_min_nfa(EXAMPLE)):
        path = tmp_path / "example.aut"
        write_automaton(path, automaton)
        loaded = read_automaton(path)
        assert isinstance(loaded, RankedAutomaton)
        assert loaded == automaton
        assert dump_automaton(loaded) == path.read_text(encoding="utf-8")


def test_general_automaton_round_trip() -> None:
    star = star_automaton(bitmap_to_min_dfa(EXAMPLE))
    text = dump_automaton(star)
    assert text.startswith("AUT1 2 - general\n")
    loaded = load_automaton(text)
    assert isinstance(loaded, GeneralAutomaton)
    assert loaded == star
    assert equivalent(loaded, star)


def test_automaton_transitions_are_sorted() -> None:
    text = dump_automaton(bitmap_to_min_dfa(EXAMPLE))
    transitions = [line for line in text.splitlines() if line.startswith("trans ")]
    parsed = [tuple(int(part) for part in line.split()[1:]) for line in transitions]
    assert parsed == sorted(parsed)


def test_ranked_automaton_must_respect_ranks() -> None:
    text = "AUT1 2 1 ranked\nstate 0 rank=1 initial\nstate 1 rank=1 final\ntrans 0 0 1\n"
    with pytest.raises(FormatError):
        load_automaton(text)


def test_automaton_loader_rejects_unknown_lines() -> None:
    with pytest.raises(FormatError) as excinfo:
        load_automaton("AUT1 2 1 ranked\nstate 0 rank=1 initial\nedge 0 0 0\n")
    assert excinfo.value.line == 3


def test_general_automaton_needs_one_initial_state() -> None:
    with pytest.raises(FormatError):
        load_automaton("AUT1 2 - general\nstate 0 final\n")


def test_cover_instance_round_trip(tmp_path: Path) -> None:
    text = "COV1 4\ntarget 1011\ntarget 0111\ncand 1010\ncand 0001\ncand 0111\n"
    instance = load_cover_instance(text)
    assert instance.width == 4
    assert len(instance.targets) == 2
    assert len(instance.candidates) == 3
    path = tmp_path / "instance.cov"
    write_cover_instance(path, instance)
    assert read_cover_instance(path) == instance
    assert min_cover(instance).size == 3


def test_cover_instance_defaults_candidates_to_targets() -> None:
    instance = load_cover_instance("COV1 2\ntarget 11\ntarget 01\n")
    assert instance.candidates == instance.targets
    assert dump_cover_instance(instance) == (
        "COV1 2\ntarget 11\ntarget 01\ncand 11\ncand 01\n"
    )


def test_cover_instance_rejects_wrong_widths() -> None:
    with pytest.raises(FormatError) as excinfo:
        load_cover_instance("COV1 3\ntarget 11\n")
    assert excinfo.value.line == 2


def test_writers_create_missing_directories(tmp_path: Path) -> None:
    nested = tmp_path / "a" / "b"
    write_bitmap(nested / "example.blk", EXAMPLE)
    write_automaton(nested / "deeper" / "example.aut", bitmap_to_min_dfa(EXAMPLE))
    write_cover_instance(
        nested / "instance.cov", load_cover_instance("COV1 2\ntarget 11\ntarget 01\n")
    )
    assert read_bitmap(nested / "example.blk") == EXAMPLE
    assert read_automaton(nested / "deeper" / "example.aut").num_states == 11
    assert len(read_cover_instance(nested / "instance.cov").targets) == 2
