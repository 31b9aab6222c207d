"""Shared Typer app, console and helpers for the blockset command line."""

from __future__ import annotations

# ruff: noqa: F401
import json
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Annotated, NoReturn

import typer
from rich.console import Console
from rich.table import Table

from blockset import __version__
from blockset.core.automata import dsc, width_profile
from blockset.core.blockcore import Bitmap, BlockParams, Word
from blockset.core.bounds import (
    OPERATIONS,
    BoundReport,
    bitmap_dsc,
    check_operation_bounds,
    dfa_widths,
    nsc,
)
from blockset.core.config import BlocksetConfig, load_config
from blockset.core.config_validation import (
    require_positive_int,
    validate_solver,
    validate_target,
)
from blockset.core.cover import solve_cover
from blockset.core.errors import (
    BlocksetError,
    BudgetExceededError,
    EmptyLanguageError,
    FormatError,
    ParamsMismatchError,
    UnknownFamilyError,
)
from blockset.core.formats import (
    dump_automaton,
    dump_bitmap,
    read_bitmap,
    read_cover_instance,
    write_automaton,
)
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
from blockset.core.selftest import run_selftest
from blockset.core.synthesis import bitmap_to_min_dfa, synthesize_min_nfa
from blockset.core.verification import ROW_NAMES, VerificationConfig, run_table
from blockset.core.witness import (
    SIMPLE_FAMILIES,
    half_match_witness,
    max_witness,
    palindrome_witness,
    prohibited_symbol_witness,
    simple_witness,
)
from blockset.logging_utils import configure_logging, get_logger

app = typer.Typer(add_completion=False, no_args_is_help=True)
verify_app = typer.Typer(no_args_is_help=True)
console = Console()
err_console = Console(stderr=True)

app.add_typer(verify_app, name="verify", help="Check constructions against their bounds.")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_EMPTY = 2
EXIT_BUDGET = 3
EXIT_NOT_TIGHT = 4

SolverOption = Annotated[
    str | None,
    typer.Option(help="Cover solver: exact or greedy (default from config)."),
]
BudgetOption = Annotated[
    int | None,
    typer.Option(help="Search-node budget of the exact cover solver."),
]

_ERROR_CODES: dict[type[BlocksetError], tuple[str, int]] = {
    EmptyLanguageError: ("BLOCKSET-EMPTY-LANGUAGE", EXIT_EMPTY),
    BudgetExceededError: ("BLOCKSET-BUDGET", EXIT_BUDGET),
    FormatError: ("BLOCKSET-FORMAT", EXIT_INPUT),
    ParamsMismatchError: ("BLOCKSET-PARAMS-MISMATCH", EXIT_INPUT),
    UnknownFamilyError: ("BLOCKSET-UNKNOWN-FAMILY", EXIT_INPUT),
}
_HINTS: dict[str, str] = {
    "BLOCKSET-BUDGET": "Raise --budget or pass --allow-uncertified to keep the greedy result.",
    "BLOCKSET-EMPTY-LANGUAGE": "The bitmap has no 1 bit; add a word first.",
    "BLOCKSET-UNKNOWN-FAMILY": "Run `blockset witness --help` for the family list.",
}


def _version_callback(value: bool) -> None:
    """Print package version and exit when requested."""
    if value:
        console.print(__version__)
        raise typer.Exit()


def _emit(line: str) -> None:
    """Write one machine-readable stdout line verbatim, tabs included."""
    typer.echo(line)


def _cli_fail(code: str, message: str, hint: str | None = None, exit_code: int = 1) -> NoReturn:
    """Print a standardized error with error code and optional hint, then exit."""
    text = f"[{code}] {message}" if hint is None else f"[{code}] {message} Hint: {hint}"
    err_console.print(text, markup=False, highlight=False, soft_wrap=True)
    raise typer.Exit(code=exit_code)


def _error_code(exc: BlocksetError) -> tuple[str, int]:
    for kind, entry in _ERROR_CODES.items():
        if isinstance(exc, kind):
            return entry
    return "BLOCKSET-INVALID-INPUT", EXIT_INPUT


@contextmanager
def _domain_errors() -> Iterator[None]:
    """Translate library failures into coded messages and exit statuses."""
    try:
        yield
    except BlocksetError as exc:
        code, exit_code = _error_code(exc)
        get_logger().debug("command failed: %s", exc)
        _cli_fail(code, str(exc), _HINTS.get(code), exit_code)
    except ValueError as exc:
        _cli_fail("BLOCKSET-INVALID-INPUT", str(exc), exit_code=EXIT_INPUT)
    except OSError as exc:
        _cli_fail("BLOCKSET-IO", str(exc), exit_code=EXIT_INPUT)


def _config(ctx: typer.Context) -> BlocksetConfig:
    """Return the configuration resolved by the app callback."""
    if isinstance(ctx.obj, BlocksetConfig):
        return ctx.obj
    return BlocksetConfig()


def _resolve_solver(ctx: typer.Context, solver: str | None, budget: int | None) -> tuple[str, int]:
    """Explicit options win over the configuration file and the environment."""
    config = _config(ctx)
    with _domain_errors():
        resolved_solver = validate_solver(solver if solver is not None else config.solver)
        resolved_budget = require_positive_int(
            budget if budget is not None else config.budget, "budget"
        )
    return resolved_solver, resolved_budget


def _ensure_positive(value: int, field_name: str) -> int:
    """Validate positive integer CLI values."""
    with _domain_errors():
        require_positive_int(value, field_name)
    return value


def _widths_line(label: str, widths: tuple[int, ...]) -> str:
    return f"{label} {' '.join(str(width) for width in widths)}"


def _flag(value: bool | None) -> str:
    if value is None:
        return "-"
    return "true" if value else "false"


def _optional(value: int | None) -> str:
    return "-" if value is None else str(value)


def _report_line(label: str, report: BoundReport, status: str | None = None) -> str:
    """Fixed column order: label, measure, observed, formula, lower, satisfied, tight, nfa."""
    fields = [
        label,
        report.measure,
        str(report.observed_value),
        str(report.formula_value),
        _optional(report.lower_value),
        _flag(report.satisfied),
        _flag(report.tight),
        _optional(report.nfa_observed),
        _optional(report.nfa_formula),
        _flag(report.nfa_certified),
    ]
    if status is not None:
        fields.append(status)
    return "\t".join(fields)


REPORT_HEADER = "\t".join(
    [
        "subject",
        "measure",
        "observed",
        "formula",
        "lower",
        "satisfied",
        "tight",
        "nfa_observed",
        "nfa_formula",
        "nfa_certified",
    ]
)


def _write_or_emit(text: str, output: Path | None) -> None:
    if output is None:
        typer.echo(text, nl=False)
        return
    output.parent.mkdir(parents=True, exist_ok=True)
    output.write_text(text, encoding="utf-8")


__all__ = [name for name in globals() if not name.startswith("__")]
