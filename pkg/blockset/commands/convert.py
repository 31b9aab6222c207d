"""CLI command registrations."""

from __future__ import annotations

# mypy: ignore-errors
# ruff: noqa: B008,F403,F405,I001
from blockset.commands.common import *


@app.callback()
def main(
    ctx: typer.Context,
    version: Annotated[
        bool,
        typer.Option(
            "--version",
            help="Show blockset version and exit.",
            is_eager=True,
            callback=_version_callback,
        ),
    ] = False,
    verbose: Annotated[
        bool,
        typer.Option("--verbose", "-v", help="Enable verbose debug logging."),
    ] = False,
    log_file: Annotated[
        Path | None,
        typer.Option("--log-file", help="Write logs to this file instead of stderr."),
    ] = None,
    config: Annotated[
        Path | None,
        typer.Option("--config", help="YAML file with solver, budget, seed and workers."),
    ] = None,
) -> None:
    """Block languages as bitmaps: minimal automata, operations and tightness checks."""
    configure_logging(log_file=log_file, verbose=verbose)
    with _domain_errors():
        ctx.obj = load_config(config)


@app.command()
def convert(
    ctx: typer.Context,
    input_file: Annotated[Path, typer.Argument(help="BLK1 bitmap file.")],
    to: Annotated[
        str,
        typer.Option("--to", help="Target automaton: min-dfa or min-nfa."),
    ] = "min-dfa",
    output: Annotated[
        Path | None,
        typer.Option("--output", "-o", help="AUT1 output path (default: input with .aut)."),
    ] = None,
    solver: SolverOption = None,
    budget: BudgetOption = None,
    allow_uncertified: Annotated[
        bool,
        typer.Option(help="Keep the greedy cover when the exact search runs out of budget."),
    ] = False,
    workers: Annotated[
        int | None,
        typer.Option(help="Threads for solving rank covers (default from config)."),
    ] = None,
) -> None:
    """Build the minimal DFA or a minimal NFA of a BLK1 bitmap and write it as AUT1."""
    resolved_solver, resolved_budget = _resolve_solver(ctx, solver, budget)
    max_workers = _ensure_positive(
        workers if workers is not None else _config(ctx).max_workers, "workers"
    )
    with _domain_errors():
        target = validate_target(to)
        bitmap = read_bitmap(input_file)
        destination = output or input_file.with_suffix(".aut")
        if target == "min-dfa":
            automaton = bitmap_to_min_dfa(bitmap)
            profile = width_profile(automaton)
            write_automaton(destination, automaton)
            _emit(f"states {automaton.num_states}")
            _emit(f"dsc {dsc(automaton)}")
            _emit(_widths_line("widths", profile.widths))
        else:
            synthesis = synthesize_min_nfa(
                bitmap,
                solver=resolved_solver,
                budget=resolved_budget,
                strict=not allow_uncertified,
                max_workers=max_workers,
            )
            certified = resolved_solver == "exact" and synthesis.certified
            write_automaton(destination, synthesis.automaton)
            _emit(f"states {synthesis.num_states}")
            _emit(_widths_line("widths", tuple(cover.size for cover in synthesis.covers)))
            _emit(f"certified {_flag(certified)}")
    _emit(f"wrote {destination}")


@app.command()
def sc(
    ctx: typer.Context,
    input_file: Annotated[Path, typer.Argument(help="BLK1 bitmap file.")],
    solver: SolverOption = None,
    budget: BudgetOption = None,
) -> None:
    """Print dsc, nsc and the per-rank widths of a BLK1 bitmap."""
    resolved_solver, resolved_budget = _resolve_solver(ctx, solver, budget)
    with _domain_errors():
        bitmap = read_bitmap(input_file)
        result = nsc(bitmap, solver=resolved_solver, budget=resolved_budget)
        _emit(f"dsc {bitmap_dsc(bitmap)}")
        _emit(f"nsc {result.value}")
        _emit(f"certified {_flag(result.certified)}")
        _emit(_widths_line("dfa-widths", dfa_widths(bitmap)))
        _emit(_widths_line("nfa-widths", result.widths))
