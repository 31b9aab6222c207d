"""Tests for run configuration loading and validation helpers."""

from __future__ import annotations

from pathlib import Path

import pytest

from blockset.core.config import (
    BUDGET_ENV_VAR,
    DEFAULT_BUDGET,
    BlocksetConfig,
    budget_from_env,
    load_config,
)
from blockset.core.config_validation import (
    require_at_least,
    require_positive_int,
    validate_solver,
    validate_target,
)


def test_defaults_without_file_or_env() -> None:
    config = load_config(env={})
    assert config == BlocksetConfig()
    assert config.budget == DEFAULT_BUDGET
    assert config.solver == "exact"


def test_yaml_file_overrides_defaults(tmp_path: Path) -> None:
    path = tmp_path / "blockset.yaml"
    path.write_text("solver: greedy\nbudget: 500\nmax_workers: 2\n", encoding="utf-8")
    config = load_config(path, env={})
    assert config.solver == "greedy"
    assert config.budget == 500
    assert config.max_workers == 2


def test_environment_budget_wins_over_file(tmp_path: Path) -> None:
    path = tmp_path / "blockset.yaml"
    path.write_text("budget: 500\n", encoding="utf-8")
    config = load_config(path, env={BUDGET_ENV_VAR: "42"})
    assert config.budget == 42


def test_empty_yaml_file_keeps_defaults(tmp_path: Path) -> None:
    path = tmp_path / "blockset.yaml"
    path.write_text("", encoding="utf-8")
    assert load_config(path, env={}) == BlocksetConfig()


@pytest.mark.parametrize(
    "content",
    ["solver: fast\n", "budget: 0\n", "unknown: 1\n", "- a\n- b\n", "budget: [1\n", "seed: x\n"],
)
def test_bad_files_are_rejected(tmp_path: Path, content: str) -> None:
    path = tmp_path / "blockset.yaml"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(ValueError):
        load_config(path, env={})


@pytest.mark.parametrize("raw", ["abc", "0", "-5"])
def test_bad_budget_env_is_rejected(raw: str) -> None:
    with pytest.raises(ValueError):
        budget_from_env({BUDGET_ENV_VAR: raw})


def test_blank_budget_env_is_ignored() -> None:
    assert budget_from_env({BUDGET_ENV_VAR: "  "}) is None


def test_config_serializes_all_fields() -> None:
    assert set(BlocksetConfig().to_dict()) == {"solver", "budget", "seed", "max_workers", "samples"}


def test_validation_helpers() -> None:
    assert require_positive_int(3, "n") == 3
    assert require_at_least(2, 2, "n") == 2
    assert validate_solver("greedy") == "greedy"
    assert validate_target("min-nfa") == "min-nfa"
    with pytest.raises(ValueError):
        require_positive_int(0, "n")
    with pytest.raises(ValueError):
        validate_target("regex")
