"""Logging configuration for the pasting engine."""
import logging
import sys
from pathlib import Path
from typing import Optional


def setup_logging(log_level: str = "WARNING", log_file: Optional[Path] = None) -> logging.Logger:
    """Configure the root logger.

    Console output goes to stderr; stdout is reserved for reports.
    """
    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    logger = logging.getLogger()
    logger.setLevel(getattr(logging, log_level.upper()))

    # Repeated CLI invocations in one process must not stack handlers
    for handler in list(logger.handlers):
        if getattr(handler, "_pasting_engine", False):
            logger.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler._pasting_engine = True
    logger.addHandler(console_handler)

    if log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_file, encoding="utf-8")
        file_handler.setFormatter(formatter)
        file_handler._pasting_engine = True
        logger.addHandler(file_handler)

    return logger
