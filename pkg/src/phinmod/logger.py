"""Logging configuration for the workbench.

Console output stays terse (the CLI owns stdout for JSON reports); the
daily log file keeps DEBUG detail of normalizations and catalog matches.
"""

import logging
import time
from datetime import date
from pathlib import Path
from typing import Optional

from .paths import user_dir

LOGGER_NAME = "phinmod"
LOG_RETENTION_DAYS = 7


class ConsoleHandler(logging.StreamHandler):
    """stderr handler whose level follows ``--verbose``."""

    def __init__(self):
        super().__init__()
        self.setLevel(logging.WARNING)
        self.setFormatter(logging.Formatter("phinmod: %(levelname)s: %(message)s"))


def log_file_for(log_dir: Path, day: Optional[date] = None) -> Path:
    """Path of the log file for ``day`` (today by default)."""
    return log_dir / f"phinmod_{(day or date.today()).strftime('%Y%m%d')}.log"


def _file_handler() -> Optional[logging.Handler]:
    try:
        log_dir = user_dir("logs")
        handler = logging.FileHandler(log_file_for(log_dir), encoding='utf-8')
    except OSError:
        return None
    handler.setLevel(logging.DEBUG)
    handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s [%(module)s] %(message)s'))
    _remove_stale_logs(log_dir, LOG_RETENTION_DAYS)
    return handler


def setup_logging(level: int = logging.INFO) -> logging.Logger:
    """Attach the console and file handlers once.

    Args:
        level: Level of the ``phinmod`` logger itself

    Returns:
        The ``phinmod`` logger
    """
    log = logging.getLogger(LOGGER_NAME)
    log.setLevel(level)
    if any(isinstance(h, ConsoleHandler) for h in log.handlers):
        return log
    log.addHandler(ConsoleHandler())
    handler = _file_handler()
    if handler is not None:  # None on a read-only home
        log.addHandler(handler)
    return log


def set_console_level(level: int) -> None:
    """Change the verbosity of stderr output; the file keeps DEBUG.

    Args:
        level: New level for the console handler
    """
    for handler in logging.getLogger(LOGGER_NAME).handlers:
        if isinstance(handler, ConsoleHandler):
            handler.setLevel(level)


def _remove_stale_logs(log_dir: Path, days: int) -> None:
    cutoff = time.time() - days * 86400
    for log_file in log_dir.glob("phinmod_*.log"):
        try:
            if log_file.stat().st_mtime < cutoff:
                log_file.unlink()
        except OSError:
            pass


logger = setup_logging(level=logging.DEBUG)
