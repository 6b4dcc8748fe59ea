"""
Logging utilities for essnorm.

Provides centralized logging configuration and logger instances.
Console output goes to stderr: stdout is reserved for CSV/JSON artifacts.
"""
import logging
import sys
from pathlib import Path
from logging.handlers import RotatingFileHandler
from typing import Optional, TextIO

ROOT_LOGGER = "essnorm"


def setup_logging(
    log_dir: Optional[Path] = None,
    log_level: int = logging.WARNING,
    log_file: str = "essnorm.log",
    stream: Optional[TextIO] = None,
) -> None:
    """
    Setup logging configuration.

    Args:
        log_dir: Directory for log files (no file handler when None)
        log_level: Logging level (default: WARNING)
        log_file: Name of log file
        stream: Console stream (default: sys.stderr)
    """
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(log_level)
    logger.propagate = False

    # Remove existing handlers to avoid duplicates
    logger.handlers.clear()

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S"
    )

    if log_dir is not None:
        log_dir = Path(log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = RotatingFileHandler(
            log_dir / log_file,
            maxBytes=10 * 1024 * 1024,  # 10MB
            backupCount=5,
            encoding="utf-8",
        )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    console_handler = logging.StreamHandler(stream if stream is not None else sys.stderr)
    console_handler.setLevel(log_level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a module.

    Args:
        name: Logger name (typically module name)

    Returns:
        Logger instance
    """
    root_logger = logging.getLogger(ROOT_LOGGER)
    if not root_logger.handlers:
        setup_logging()

    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
