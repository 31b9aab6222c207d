"""CLI command registrations."""

from __future__ import annotations

# mypy: ignore-errors
# ruff: noqa: B008,F403,F405,I001
from blockset.commands.common import *


@app.command("solve-cover")
def solve_cover_command(
    ctx: typer.Context,
    input_file: Annotated[Path, typer.Argument(help="COV1 cover instance file.")],
    solver: SolverOption = None,
    budget: BudgetOption = None,
    allow_uncertified: Annotated[
        bool,
        typer.Option(help="Print the greedy cover when the exact search runs out of budget."),
    ] = False,
    json_output: Annotated[
        bool,
        typer.Option("--json", help="Print the solution as JSON instead of lines."),
    ] = False,
) -> None:
    """Find a minimum set of elements whose unions rebuild every target."""
    resolved_solver, resolved_budget = _resolve_solver(ctx, solver, budget)
    with _domain_errors():
        instance = read_cover_instance(input_file)
        solution = solve_cover(
            instance,
            solver=resolved_solver,
            budget=resolved_budget,
            strict=not allow_uncertified,
        )
    if json_output:
        _emit(json.dumps(solution.to_dict(), indent=2))
        return
    _emit(f"size {solution.size}")
    _emit(f"certified {_flag(solution.certified_minimal)}")
    for value in instance.ordered(solution.elements):
        _emit(f"element {instance.render(value)}")
    for target in instance.ordered(instance.targets):
        parts = " ".join(instance.render(value) for value in solution.selection[target])
        _emit(f"target {instance.render(target)} = {parts}")
