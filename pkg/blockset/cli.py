"""Command-line interface bootstrap for blockset."""

from __future__ import annotations

# ruff: noqa: I001
from blockset.commands.common import app

# Import command modules for side-effect registration.
from blockset.commands import (  # noqa: F401
    convert,
    cover,
    operations,
    selftest,
    verify,
    witnesses,
)

__all__ = ["app"]


if __name__ == "__main__":
    app()
