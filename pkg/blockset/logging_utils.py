"""Logging configuration helpers for blockset."""

from __future__ import annotations

import json
import logging
import sys
from datetime import datetime, timezone
from pathlib import Path

UTC = timezone.utc

_LOGGER_NAME = "blockset"
_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
_json_output = False


class JsonLogFormatter(logging.Formatter):
    """One JSON object per record with timestamp, level, logger and message."""

    def format(self, record: logging.LogRecord) -> str:
        payload = {
            "timestamp": datetime.fromtimestamp(record.created, tz=UTC).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        if record.exc_info:
            payload["exception"] = self.formatException(record.exc_info)
        return json.dumps(payload)


def set_json_output(enabled: bool) -> None:
    """Select JSON records for handlers installed by later configure_logging calls."""
    global _json_output
    _json_output = enabled


def _close_handlers(logger: logging.Logger) -> None:
    """Detach and close all handlers currently bound to the logger."""
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()


def configure_logging(*, log_file: Path | None, verbose: bool) -> logging.Logger:
    """Configure blockset logging for one CLI invocation and return the logger.

    With a log file the target is truncated so each run has an isolated log.
    Without one, records go to stderr and stay out of the machine-readable
    stdout stream.
    """
    logger = logging.getLogger(_LOGGER_NAME)
    _close_handlers(logger)

    level = logging.DEBUG if verbose else logging.INFO
    logger.setLevel(level)
    logger.propagate = False
    handler: logging.Handler
    if log_file is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(logging.DEBUG if verbose else logging.WARNING)
    else:
        log_path = log_file.expanduser().resolve()
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handler = logging.FileHandler(log_path, mode="w", encoding="utf-8")
        handler.setLevel(level)
    handler.setFormatter(JsonLogFormatter() if _json_output else logging.Formatter(_FORMAT))
    logger.addHandler(handler)
    return logger


def get_logger() -> logging.Logger:
    """Return the blockset logger (configured or with null handler)."""
    logger = logging.getLogger(_LOGGER_NAME)
    if not logger.handlers:
        logger.addHandler(logging.NullHandler())
    return logger
