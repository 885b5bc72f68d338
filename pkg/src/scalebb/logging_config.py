"""structlog setup for the CLI and scripts.

Records from ``structlog.get_logger()`` and from plain :mod:`logging` loggers go
through the same stdlib handlers. Standard output carries the CLI's JSON
documents, so human-readable log lines go to standard error. A JSON-lines
rotating file under ``logs/`` is opt-in.

App layer only: ``scalebb.core`` never imports this module.
"""

from __future__ import annotations

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path

import structlog
from structlog.typing import Processor

LOG_PATH = Path(__file__).resolve().parents[2] / "logs" / "scalebb.log"
ROTATE_AT_BYTES = 5 * 1024 * 1024
KEEP_ROTATED = 3

CONSOLE_HANDLER = "scalebb-console"

# pool workers and the event loop log at DEBUG on every task
_QUIET = ("asyncio", "concurrent.futures")


def _pre_chain() -> list[Processor]:
    return [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.processors.TimeStamper(fmt="iso", utc=False),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
    ]


def _formatter(renderer: Processor) -> structlog.stdlib.ProcessorFormatter:
    return structlog.stdlib.ProcessorFormatter(
        foreign_pre_chain=_pre_chain(),
        processors=[structlog.stdlib.ProcessorFormatter.remove_processors_meta, renderer],
    )


def _console_handler() -> logging.Handler:
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(CONSOLE_HANDLER)
    handler.setFormatter(_formatter(structlog.dev.ConsoleRenderer(colors=False)))
    return handler


def _file_handler(path: Path) -> logging.Handler:
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = RotatingFileHandler(
        path, maxBytes=ROTATE_AT_BYTES, backupCount=KEEP_ROTATED, encoding="utf-8"
    )
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(_formatter(structlog.processors.JSONRenderer()))
    return handler


def setup_logging(level: str = "WARNING", log_to_file: bool = False) -> None:
    """Install the stderr handler (and optionally the file handler) on the root logger.

    Safe to call repeatedly: once the console handler is present, a call only
    changes the root level.
    """
    root = logging.getLogger()
    root.setLevel(logging.getLevelNamesMapping().get(level.upper(), logging.WARNING))
    if CONSOLE_HANDLER in {handler.get_name() for handler in root.handlers}:
        return

    structlog.configure(
        processors=[*_pre_chain(), structlog.stdlib.ProcessorFormatter.wrap_for_formatter],
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=True,
    )
    root.addHandler(_console_handler())
    if log_to_file:
        root.addHandler(_file_handler(LOG_PATH))

    for name in _QUIET:
        logging.getLogger(name).setLevel(logging.WARNING)
