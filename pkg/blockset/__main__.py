"""Module entrypoint for python -m blockset; logs are written as JSON records."""

from __future__ import annotations

from blockset.cli import app
from blockset.logging_utils import set_json_output

if __name__ == "__main__":
    set_json_output(True)
    app()
