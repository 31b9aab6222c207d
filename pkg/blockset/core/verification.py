"""Rerun the tightness witnesses of every operation bound at desk-scale sizes."""

from __future__ import annotations

import json
from collections.abc import Callable, Iterable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from blockset.core.blockcore import Bitmap, BlockParams, Word
from blockset.core.bounds import (
    BoundReport,
    bitmap_dsc,
    campeanu_ho_bound,
    check_operation_bounds,
    nfa_max_size,
    nsc,
)
from blockset.core.config import DEFAULT_BUDGET
from blockset.core.config_validation import require_at_least, require_positive_int, validate_solver
from blockset.core.langops import bm_not
from blockset.core.witness import (
    half_match_witness,
    max_witness,
    palindrome_witness,
    prohibited_symbol_witness,
    simple_witness,
)
from blockset.logging_utils import get_logger

UTC = timezone.utc

LOGGER = get_logger()

TIGHT = "tight"
NOT_TIGHT = "not-tight"
VIOLATED = "violated"
UNCERTIFIED = "uncertified"
SATISFIED = "satisfied"
_FAILING = frozenset({NOT_TIGHT, VIOLATED})


@dataclass(frozen=True)
class VerificationConfig:
    """Sizes and solver settings for a table run."""

    max_ell: int = 4
    min_ell: int = 2
    solver: str = "exact"
    budget: int = DEFAULT_BUDGET
    max_workers: int = 4
    rows: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        require_at_least(self.min_ell, 2, "min_ell")
        require_at_least(self.max_ell, self.min_ell, "max_ell")
        require_positive_int(self.budget, "budget")
        require_positive_int(self.max_workers, "max_workers")
        validate_solver(self.solver)
        if self.rows is not None:
            unknown = sorted(set(self.rows) - set(ROW_NAMES))
            if unknown:
                raise ValueError(f"Unknown rows: {', '.join(unknown)}.")


@dataclass(frozen=True)
class _RowSpec:
    name: str
    ell: int
    expect: str | None
    build: Callable[[VerificationConfig], BoundReport]


@dataclass(frozen=True)
class VerificationRow:
    """One checked witness with the measure it is expected to make tight."""

    name: str
    ell: int
    expect: str | None
    report: BoundReport

    @property
    def status(self) -> str:
        return row_status(self.report, self.expect)

    @property
    def passed(self) -> bool:
        return self.status not in _FAILING

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "ell": self.ell,
            "expect": self.expect,
            "status": self.status,
            "report": self.report.to_dict(),
        }


def row_status(report: BoundReport, expect: str | None) -> str:
    """Classify a report; ``expect`` is ``"main"``, ``"nfa"`` or ``None`` for information rows."""
    if expect == "nfa":
        satisfied, tight = report.nfa_satisfied, report.nfa_tight
        if satisfied is None or tight is None:
            return UNCERTIFIED
    else:
        if not report.certified:
            return UNCERTIFIED
        satisfied, tight = report.satisfied, report.tight
    if not satisfied:
        return VIOLATED
    if expect is None:
        return SATISFIED
    return TIGHT if tight else NOT_TIGHT


@dataclass(frozen=True)
class VerificationReport:
    """All rows of a table run in deterministic row order."""

    started_at: str
    finished_at: str
    duration_seconds: float
    rows: list[VerificationRow]

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    def to_dict(self) -> dict[str, Any]:
        return {
            "started_at": self.started_at,
            "finished_at": self.finished_at,
            "duration_seconds": round(self.duration_seconds, 4),
            "passed": self.passed,
            "rows": [row.to_dict() for row in self.rows],
        }

    def write(self, path: Path) -> None:
        """Write report JSON to disk."""
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(self.to_dict(), indent=2), encoding="utf-8")


def _max_dfa(ell: int) -> Callable[[VerificationConfig], BoundReport]:
    def build(_config: VerificationConfig) -> BoundReport:
        bitmap, _shape = max_witness(ell)
        return BoundReport(
            subject=f"max witness over k=2, ell={ell}",
            formula_value=campeanu_ho_bound(2, ell)[0],
            observed_value=bitmap_dsc(bitmap),
        )

    return build


def _max_nfa(ell: int) -> Callable[[VerificationConfig], BoundReport]:
    def build(config: VerificationConfig) -> BoundReport:
        result = nsc(palindrome_witness(2, ell // 2), solver=config.solver, budget=config.budget)
        return BoundReport(
            subject=f"palindromes over k=2, ell={ell}",
            formula_value=nfa_max_size(2, ell),
            observed_value=result.value,
            measure="nsc",
            certified=result.certified,
        )

    return build


def _prohibited(ell: int) -> Callable[[VerificationConfig], BoundReport]:
    """The block complement of the prohibited-symbol language is wide at rank ``d``."""

    def build(config: VerificationConfig) -> BoundReport:
        k, d = 2, ell // 2
        language = prohibited_symbol_witness(k, d)
        operand = nsc(language, solver=config.solver, budget=config.budget)
        complement = nsc(bm_not(language), solver=config.solver, budget=config.budget)
        return BoundReport(
            subject=f"block complement of prohibited-symbol over k={k}, d={d}",
            formula_value=k**d,
            lower_value=k**d,
            observed_value=complement.widths[d],
            measure="nfa-width",
            certified=complement.certified,
            nfa_formula=(k - 1) * d * d + 2 * d,
            nfa_observed=operand.value,
            nfa_certified=operand.certified,
        )

    return build


def _operation(
    op: str,
    operands: Callable[[], list[Bitmap]],
    word: Word | None = None,
    *,
    with_nfa: bool = False,
) -> Callable[[VerificationConfig], BoundReport]:
    def build(config: VerificationConfig) -> BoundReport:
        return check_operation_bounds(
            op,
            operands(),
            word,
            solver=config.solver,
            budget=config.budget,
            with_nfa=with_nfa,
        )

    return build


def _rows_for(ell: int) -> list[_RowSpec]:
    binary = BlockParams(2, ell)
    ternary = BlockParams(3, ell)
    even = ell % 2 == 0

    def single_a() -> list[Bitmap]:
        return [simple_witness("singleton-a", binary)]

    def max_operand() -> list[Bitmap]:
        return [max_witness(ell)[0]]

    def unary_pair() -> list[Bitmap]:
        head = ell // 2
        return [
            simple_witness("singleton-a", BlockParams(1, head)),
            simple_witness("singleton-a", BlockParams(1, ell - head)),
        ]

    rows = [
        _RowSpec("max-dfa", ell, "main", _max_dfa(ell)),
        _RowSpec(
            "union",
            ell,
            "main",
            _operation(
                "union",
                lambda: [
                    simple_witness("ac-block", ternary),
                    simple_witness("bc-block", ternary),
                ],
            ),
        ),
        _RowSpec(
            "union-nsc",
            ell,
            "nfa",
            _operation(
                "union",
                lambda: [
                    simple_witness("singleton-a", binary),
                    simple_witness("singleton-b", binary),
                ],
                with_nfa=True,
            ),
        ),
        _RowSpec(
            "word-add",
            ell,
            "main",
            _operation("word-add", single_a, Word((1,) * ell), with_nfa=True),
        ),
        _RowSpec(
            "word-remove",
            ell,
            "main",
            _operation(
                "word-remove",
                lambda: [simple_witness("full", binary)],
                Word((0,) * ell),
                with_nfa=True,
            ),
        ),
        _RowSpec("block-complement", ell, "main", _operation("block-complement", single_a)),
        _RowSpec("concat", ell, "main", _operation("concat", unary_pair, with_nfa=True)),
        _RowSpec("star", ell, "main", _operation("star", max_operand)),
        _RowSpec("plus", ell, "main", _operation("plus", max_operand)),
        _RowSpec("stencil", ell, "main", _operation("stencil", single_a)),
        _RowSpec("complement", ell, "main", _operation("complement", max_operand)),
        _RowSpec("reverse", ell, None, _operation("reverse", max_operand)),
    ]
    if even:
        d = ell // 2
        rows.append(_RowSpec("max-nfa", ell, "main", _max_nfa(ell)))
        rows.append(
            _RowSpec(
                "intersection",
                ell,
                "main",
                _operation(
                    "intersection",
                    lambda: [half_match_witness(2, d, 0), half_match_witness(2, d, 1)],
                ),
            )
        )
        if d >= 2:
            rows.append(_RowSpec("prohibited-symbol", ell, "main", _prohibited(ell)))
    return rows


ROW_NAMES = (
    "max-dfa",
    "max-nfa",
    "union",
    "union-nsc",
    "word-add",
    "word-remove",
    "block-complement",
    "concat",
    "star",
    "plus",
    "stencil",
    "complement",
    "reverse",
    "intersection",
    "prohibited-symbol",
)


def table_rows(config: VerificationConfig) -> list[_RowSpec]:
    """Row specs ordered by ``ell`` and then by row name order."""
    order = {name: position for position, name in enumerate(ROW_NAMES)}
    selected: list[_RowSpec] = []
    for ell in range(config.min_ell, config.max_ell + 1):
        specs = sorted(_rows_for(ell), key=lambda spec: order[spec.name])
        selected.extend(spec for spec in specs if config.rows is None or spec.name in config.rows)
    return selected


def _run_row(spec: _RowSpec, config: VerificationConfig) -> VerificationRow:
    report = spec.build(config)
    row = VerificationRow(name=spec.name, ell=spec.ell, expect=spec.expect, report=report)
    if row.status == UNCERTIFIED:
        LOGGER.warning("row %s at ell=%d is not certified", spec.name, spec.ell)
    LOGGER.debug("row %s ell=%d status=%s", spec.name, spec.ell, row.status)
    return row


def run_table(
    config: VerificationConfig | None = None,
    *,
    specs: Iterable[_RowSpec] | None = None,
) -> VerificationReport:
    """Run every row concurrently; results keep the row order."""
    cfg = config or VerificationConfig()
    resolved = list(specs) if specs is not None else table_rows(cfg)
    started_at = datetime.now(tz=UTC)
    with ThreadPoolExecutor(max_workers=cfg.max_workers) as executor:
        futures = [executor.submit(_run_row, spec, cfg) for spec in resolved]
        rows = [future.result() for future in futures]
    finished_at = datetime.now(tz=UTC)
    return VerificationReport(
        started_at=started_at.isoformat(),
        finished_at=finished_at.isoformat(),
        duration_seconds=(finished_at - started_at).total_seconds(),
        rows=rows,
    )
