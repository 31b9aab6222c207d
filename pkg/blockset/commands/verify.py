"""CLI command registrations."""

from __future__ import annotations

# mypy: ignore-errors
# ruff: noqa: B008,F403,F405,I001
from blockset.commands.common import *


@verify_app.command("table2")
def verify_table(
    ctx: typer.Context,
    max_ell: Annotated[int, typer.Option(help="Largest word length to check.")] = 4,
    min_ell: Annotated[int, typer.Option(help="Smallest word length to check.")] = 2,
    row: Annotated[
        list[str] | None,
        typer.Option("--row", help=f"Restrict to rows (repeatable): {', '.join(ROW_NAMES)}."),
    ] = None,
    json_path: Annotated[
        Path | None,
        typer.Option("--json", help="Write the full report as JSON to this path."),
    ] = None,
    workers: Annotated[
        int | None,
        typer.Option(help="Rows checked concurrently (default from config)."),
    ] = None,
    solver: SolverOption = None,
    budget: BudgetOption = None,
) -> None:
    """Rerun the tightness witnesses of every operation bound and report each row."""
    resolved_solver, resolved_budget = _resolve_solver(ctx, solver, budget)
    with _domain_errors():
        config = VerificationConfig(
            max_ell=max_ell,
            min_ell=min_ell,
            solver=resolved_solver,
            budget=resolved_budget,
            max_workers=workers if workers is not None else _config(ctx).max_workers,
            rows=tuple(row) if row else None,
        )
        report = run_table(config)
        if json_path is not None:
            report.write(json_path)
    _emit(REPORT_HEADER + "\tstatus")
    for item in report.rows:
        _emit(_report_line(f"{item.name}@{item.ell}", item.report, item.status))
    failing = [f"{item.name}@{item.ell}" for item in report.rows if not item.passed]
    if failing:
        _cli_fail(
            "BLOCKSET-NOT-TIGHT",
            f"Rows not tight: {', '.join(failing)}.",
            exit_code=EXIT_NOT_TIGHT,
        )


@verify_app.command("op")
def verify_operation(
    ctx: typer.Context,
    name: Annotated[
        str,
        typer.Argument(help=f"Operation: {', '.join(sorted(OPERATIONS))}."),
    ],
    inputs: Annotated[list[Path], typer.Argument(help="BLK1 operand files.")],
    word: Annotated[
        str | None,
        typer.Option(help="Word for word-add/word-remove."),
    ] = None,
    nfa: Annotated[
        bool,
        typer.Option("--nfa/--no-nfa", help="Also compare minimal NFA sizes."),
    ] = True,
    solver: SolverOption = None,
    budget: BudgetOption = None,
) -> None:
    """Apply one operation to BLK1 operands and compare the result with its bound."""
    resolved_solver, resolved_budget = _resolve_solver(ctx, solver, budget)
    with _domain_errors():
        operands = [read_bitmap(path) for path in inputs]
        parsed = Word.parse(word, operands[0].k) if word is not None and operands else None
        report = check_operation_bounds(
            name,
            operands,
            parsed,
            solver=resolved_solver,
            budget=resolved_budget,
            with_nfa=nfa,
        )
    _emit(REPORT_HEADER)
    _emit(_report_line(name, report))
    if report.certified and not report.satisfied:
        _cli_fail(
            "BLOCKSET-BOUND-VIOLATED",
            f"{report.subject}: observed {report.observed_value} exceeds the bound.",
            exit_code=EXIT_NOT_TIGHT,
        )
