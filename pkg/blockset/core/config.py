"""Run configuration: defaults, optional YAML file and environment overrides."""

from __future__ import annotations

import os
from collections.abc import Mapping
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

import yaml

from blockset.core.config_validation import (
    require_at_least,
    require_positive_int,
    validate_solver,
)

BUDGET_ENV_VAR = "BLOCKSET_BUDGET"
DEFAULT_BUDGET = 10_000_000
DEFAULT_SEED = 20240917


@dataclass(frozen=True)
class BlocksetConfig:
    """Solver and sampling settings shared by every command."""

    solver: str = "exact"
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    max_workers: int = 4
    samples: int = 200

    def __post_init__(self) -> None:
        validate_solver(self.solver)
        require_positive_int(self.budget, "budget")
        require_at_least(self.seed, 0, "seed")
        require_positive_int(self.max_workers, "max_workers")
        require_positive_int(self.samples, "samples")

    @classmethod
    def from_dict(cls, payload: Mapping[str, Any]) -> BlocksetConfig:
        """Build a config from a mapping, rejecting unknown keys."""
        known = {item.name for item in fields(cls)}
        unknown = sorted(set(payload) - known)
        if unknown:
            raise ValueError(f"Unknown configuration keys: {', '.join(unknown)}.")
        values: dict[str, Any] = {}
        for name, value in payload.items():
            if name == "solver":
                if not isinstance(value, str):
                    raise ValueError("solver must be a string.")
            elif not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"{name} must be an integer.")
            values[name] = value
        return cls(**values)

    def to_dict(self) -> dict[str, Any]:
        """Serialize the config as a JSON-ready dict."""
        return {item.name: getattr(self, item.name) for item in fields(self)}


def budget_from_env(env: Mapping[str, str] | None = None) -> int | None:
    """Return the budget override from the environment, if any."""
    source = os.environ if env is None else env
    raw = source.get(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return None
    try:
        value = int(raw.strip())
    except ValueError as exc:
        raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}.") from exc
    return require_positive_int(value, BUDGET_ENV_VAR)


def load_config(
    path: Path | None = None,
    *,
    env: Mapping[str, str] | None = None,
) -> BlocksetConfig:
    """Resolve configuration from defaults, an optional YAML file and the environment."""
    config = BlocksetConfig()
    if path is not None:
        try:
            data = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as exc:
            raise ValueError(f"Invalid YAML in {path}: {exc}") from exc
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ValueError(f"Configuration file {path} must contain a mapping.")
        config = BlocksetConfig.from_dict(data)
    override = budget_from_env(env)
    if override is not None:
        config = replace(config, budget=override)
    return config
