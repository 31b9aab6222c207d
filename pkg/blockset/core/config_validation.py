"""Shared configuration validation helpers."""

from __future__ import annotations

SOLVERS = frozenset({"exact", "greedy"})
CONVERT_TARGETS = frozenset({"min-dfa", "min-nfa"})


def require_positive_int(value: int, field_name: str) -> int:
    """Validate a positive integer input and return it."""
    if value <= 0:
        raise ValueError(f"{field_name} must be greater than zero.")
    return value


def require_at_least(value: int, minimum: int, field_name: str) -> int:
    """Validate an integer lower bound and return the value."""
    if value < minimum:
        raise ValueError(f"{field_name} must be at least {minimum}.")
    return value


def validate_choice(value: str, field_name: str, allowed: set[str] | frozenset[str]) -> str:
    """Validate that a string value is within a set of allowed options."""
    if value not in allowed:
        options = ", ".join(sorted(allowed))
        raise ValueError(f"{field_name} must be one of: {options}.")
    return value


def validate_solver(value: str) -> str:
    """Validate cover solver strategy."""
    return validate_choice(value, "solver", SOLVERS)


def validate_target(value: str) -> str:
    """Validate conversion target."""
    return validate_choice(value, "to", CONVERT_TARGETS)
