"""CLI command registrations."""

from __future__ import annotations

# mypy: ignore-errors
# ruff: noqa: B008,F403,F405,I001
from blockset.commands.common import *


@app.command()
def selftest(
    ctx: typer.Context,
    samples: Annotated[
        int | None,
        typer.Option(help="Random bitmaps per check (default from config)."),
    ] = None,
    seed: Annotated[
        int | None,
        typer.Option(help="Random seed (default from config)."),
    ] = None,
    solver: SolverOption = None,
    budget: BudgetOption = None,
    json_path: Annotated[
        Path | None,
        typer.Option("--json", help="Write the check results as JSON to this path."),
    ] = None,
) -> None:
    """Run seeded property checks on sampled bitmaps and print a pass/fail table."""
    config = _config(ctx)
    resolved_solver, resolved_budget = _resolve_solver(ctx, solver, budget)
    with _domain_errors():
        report = run_selftest(
            seed=seed if seed is not None else config.seed,
            samples=samples if samples is not None else config.samples,
            solver=resolved_solver,
            budget=resolved_budget,
        )
        if json_path is not None:
            json_path.parent.mkdir(parents=True, exist_ok=True)
            json_path.write_text(json.dumps(report.to_dict(), indent=2), encoding="utf-8")
    table = Table(title=f"blockset selftest (seed {report.seed})")
    table.add_column("Check")
    table.add_column("Samples", justify="right")
    table.add_column("Failures", justify="right")
    table.add_column("Status")
    for check in report.checks:
        status = "[green]pass[/green]" if check.passed else "[red]fail[/red]"
        table.add_row(check.name, str(check.samples), str(len(check.failures)), status)
    console.print(table)
    for check in report.checks:
        for failure in check.failures[:5]:
            err_console.print(f"{check.name}: {failure}", markup=False, highlight=False)
    if not report.passed:
        _cli_fail("BLOCKSET-SELFTEST", "Some self-test checks failed.", exit_code=EXIT_INPUT)
