"""CLI command registrations."""

from __future__ import annotations

# mypy: ignore-errors
# ruff: noqa: B008,F403,F405,I001
from blockset.commands.common import *


WITNESS_FAMILIES = ("max", "palindrome", "half-match", "prohibited-symbol", *SIMPLE_FAMILIES)


def _required(value: int | None, option: str, family: str) -> int:
    if value is None:
        raise ValueError(f"Family {family} needs {option}.")
    return value


def _build(family: str, k: int, ell: int | None, d: int | None, x: int) -> Bitmap:
    if family == "max":
        bitmap, shape = max_witness(_required(ell, "--ell", family))
        get_logger().debug("max witness r=%d t=%d r*=%d", shape.r, shape.t, shape.r_star)
        return bitmap
    if family == "palindrome":
        return palindrome_witness(k, _required(d, "--d", family))
    if family == "half-match":
        return half_match_witness(k, _required(d, "--d", family), x)
    if family == "prohibited-symbol":
        return prohibited_symbol_witness(k, _required(d, "--d", family))
    return simple_witness(family, BlockParams(k, _required(ell, "--ell", family)))


@app.command()
def witness(
    family: Annotated[str, typer.Argument(help=f"Family: {', '.join(WITNESS_FAMILIES)}.")],
    k: Annotated[int, typer.Option("--k", help="Alphabet size.")] = 2,
    ell: Annotated[
        int | None,
        typer.Option("--ell", help="Word length (max and the simple families)."),
    ] = None,
    d: Annotated[
        int | None,
        typer.Option("--d", help="Half length for palindrome, half-match, prohibited-symbol."),
    ] = None,
    x: Annotated[int, typer.Option("--x", help="Parity of the half-match family.")] = 0,
    output: Annotated[
        Path | None,
        typer.Option("--output", "-o", help="BLK1 output path (default: stdout)."),
    ] = None,
) -> None:
    """Generate a witness language as a BLK1 bitmap."""
    with _domain_errors():
        if family not in WITNESS_FAMILIES:
            raise UnknownFamilyError(
                f"Unknown family {family!r}; expected one of: {', '.join(WITNESS_FAMILIES)}."
            )
        _write_or_emit(dump_bitmap(_build(family, k, ell, d, x)), output)
