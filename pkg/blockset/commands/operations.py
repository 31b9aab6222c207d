"""CLI command registrations."""

from __future__ import annotations

# mypy: ignore-errors
# ruff: noqa: B008,F403,F405,I001
from blockset.commands.common import *


_BLOCK_BINARY = {"and": bm_and, "or": bm_or, "concat": concat_bitmaps}
_BLOCK_UNARY = {"not": bm_not, "reverse": reverse_bitmap}
_WORD = {"add-word": add_word, "remove-word": remove_word}
_SURGERY = {
    "star": star_automaton,
    "plus": plus_automaton,
    "stencil": stencil_automaton,
    "complement": complement_automaton,
}
OP_NAMES = (*_BLOCK_BINARY, *_BLOCK_UNARY, *_WORD, *_SURGERY)


def _operands(name: str, inputs: list[Path], arity: int) -> list[Bitmap]:
    if len(inputs) != arity:
        _cli_fail(
            "BLOCKSET-INVALID-INPUT",
            f"Operation {name} takes {arity} input file(s), got {len(inputs)}.",
            exit_code=EXIT_INPUT,
        )
    return [read_bitmap(path) for path in inputs]


def _apply(name: str, inputs: list[Path], word: str | None) -> str:
    """Run one operation and return the BLK1 or AUT1 text of its result."""
    if name in _BLOCK_BINARY:
        first, second = _operands(name, inputs, 2)
        return dump_bitmap(_BLOCK_BINARY[name](first, second))
    (operand,) = _operands(name, inputs, 1)
    if name in _BLOCK_UNARY:
        return dump_bitmap(_BLOCK_UNARY[name](operand))
    if name in _WORD:
        if word is None:
            _cli_fail(
                "BLOCKSET-INVALID-INPUT",
                f"Operation {name} needs --word.",
                exit_code=EXIT_INPUT,
            )
        return dump_bitmap(_WORD[name](operand, Word.parse(word, operand.k)))
    return dump_automaton(_SURGERY[name](bitmap_to_min_dfa(operand)))


@app.command("op")
def operation(
    name: Annotated[str, typer.Argument(help=f"Operation: {', '.join(OP_NAMES)}.")],
    inputs: Annotated[list[Path], typer.Argument(help="BLK1 operand files.")],
    word: Annotated[
        str | None,
        typer.Option(help="Word for add-word/remove-word, letters or dotted indices."),
    ] = None,
    output: Annotated[
        Path | None,
        typer.Option("--output", "-o", help="Result path (default: stdout)."),
    ] = None,
) -> None:
    """Apply a language operation; block-closed results are BLK1, the others AUT1."""
    if name not in OP_NAMES:
        _cli_fail(
            "BLOCKSET-UNKNOWN-OPERATION",
            f"Unknown operation {name!r}; expected one of: {', '.join(OP_NAMES)}.",
            exit_code=EXIT_INPUT,
        )
    with _domain_errors():
        text = _apply(name, inputs, word)
        _write_or_emit(text, output)
