"""
Logging for the cellular integral workbench.

Results go to stdout; everything logged goes to stderr and, at DEBUG, to a
rotating file under logs/. Library modules only ask for a logger:

    from cellular.logger import get_logger, log_duration

    logger = get_logger(__name__)
    logger.info("Enumerating convergent classes for n=%d", 9)
    with log_duration(logger, "tanh-sinh at %d digits", 60):
        ...

The CLI calls setup_logging() once per run.
"""

import logging
import os
import sys
import time
from contextlib import contextmanager
from logging.handlers import RotatingFileHandler
from typing import Any, Iterator, Optional

from cellular.config import LOG_DIR, LOG_FILE

LOG_ENABLED = os.getenv("ENABLE_LOGGING", "True").lower() == "true"
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
MAX_LOG_SIZE = 5 * 1024 * 1024  # 5MB
BACKUP_COUNT = 5

LOG_FORMAT = "%(asctime)s | %(levelname)-8s | %(name)s | %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


class NullHandler(logging.Handler):
    """Swallows records while logging is disabled."""
    def emit(self, record):
        pass


def _level(name: Optional[str]) -> int:
    return getattr(logging, (name or "INFO").upper(), logging.INFO)


def setup_logging(level: Optional[str] = None) -> None:
    """
    Install the stderr console handler and the rotating file handler on the
    root logger, replacing whatever was there. ``level`` overrides LOG_LEVEL.
    """
    if not LOG_ENABLED:
        return

    root_logger = logging.getLogger()
    root_logger.setLevel(_level(level or LOG_LEVEL))
    root_logger.handlers = []
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.INFO)
    console_handler.setFormatter(formatter)
    root_logger.addHandler(console_handler)

    try:
        LOG_DIR.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(LOG_FILE, maxBytes=MAX_LOG_SIZE, backupCount=BACKUP_COUNT)
    except OSError as e:
        console_handler.setLevel(logging.DEBUG)
        root_logger.warning("Could not open %s (%s); logging to the console only", LOG_FILE, e)
        return
    file_handler.setLevel(logging.DEBUG)
    file_handler.setFormatter(formatter)
    root_logger.addHandler(file_handler)


def get_logger(name: str) -> logging.Logger:
    """Logger for a module (pass ``__name__``); silenced when logging is disabled."""
    logger = logging.getLogger(name)
    if not LOG_ENABLED:
        logger.addHandler(NullHandler())
        logger.setLevel(logging.CRITICAL + 1)
    return logger


@contextmanager
def log_duration(logger: logging.Logger, message: str, *args: Any, level: int = logging.DEBUG) -> Iterator[None]:
    """Log ``message % args`` with the elapsed wall time once the block finishes."""
    started = time.perf_counter()
    try:
        yield
    finally:
        if logger.isEnabledFor(level):
            logger.log(level, message + " took %.2fs", *args, time.perf_counter() - started)


def disable_logging() -> None:
    global LOG_ENABLED
    LOG_ENABLED = False
    root_logger = logging.getLogger()
    root_logger.handlers = [NullHandler()]


def enable_logging() -> None:
    global LOG_ENABLED
    LOG_ENABLED = True
    setup_logging()


def set_log_level(level: str) -> None:
    """Set the root level and every real handler's level, e.g. ``set_log_level("debug")``."""
    level_value = _level(level)
    root_logger = logging.getLogger()
    root_logger.setLevel(level_value)
    for handler in root_logger.handlers:
        if not isinstance(handler, NullHandler):
            handler.setLevel(level_value)
