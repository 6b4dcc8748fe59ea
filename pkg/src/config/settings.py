"""
Configuration management for essnorm.

Handles loading and managing configuration from environment variables
and .env files.
"""
import logging
import os
from pathlib import Path
from typing import Dict, Optional
from dotenv import load_dotenv

from utils.errors import EssnormError

DEFAULT_RANK_CUTOFF = 1e-10
DEFAULT_MARGIN = 0.1
DEFAULT_MAX_DEGREE = 600
DEFAULT_SEED = 20240601


class ConfigError(EssnormError):
    """Raised when an ESSNORM_* variable holds an unusable value."""


def _read_int(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name, str(default))
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < minimum:
        raise ConfigError(f"{name} must be >= {minimum}, got {value}")
    return value


def _read_float(name: str, default: float) -> float:
    raw = os.getenv(name, repr(default))
    try:
        value = float(raw)
    except ValueError:
        raise ConfigError(f"{name} must be a number, got {raw!r}")
    if not value > 0:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


class Config:
    """Configuration class for essnorm."""

    def __init__(self):
        """Initialize configuration with defaults or from environment variables."""
        # Runtime
        self.threads = _read_int("ESSNORM_THREADS", 1, minimum=1)
        self.seed = _read_int("ESSNORM_SEED", DEFAULT_SEED, minimum=0)

        # Numerics
        self.rank_cutoff = _read_float("ESSNORM_RANK_CUTOFF", DEFAULT_RANK_CUTOFF)
        self.margin = _read_float("ESSNORM_MARGIN", DEFAULT_MARGIN)
        self.max_degree = _read_int("ESSNORM_MAX_DEGREE", DEFAULT_MAX_DEGREE, minimum=1)

        # Logging
        log_dir = os.getenv("ESSNORM_LOG_DIR")
        self.log_dir = Path(log_dir) if log_dir else None
        level_name = os.getenv("ESSNORM_LOG_LEVEL", "WARNING").upper()
        level = logging.getLevelName(level_name)
        if not isinstance(level, int):
            raise ConfigError(f"ESSNORM_LOG_LEVEL is not a logging level: {level_name!r}")
        self.log_level = level


def load_config(env_file_path: Optional[Path] = None) -> Config:
    """
    Load configuration from .env file and environment variables.

    Args:
        env_file_path: Optional path to .env file. If None, looks for .env
                      in current directory.

    Returns:
        Config instance with loaded configuration.
    """
    if env_file_path is None:
        env_file_path = Path(".env")

    if env_file_path.exists():
        load_dotenv(env_file_path)

    return Config()


def get_numeric_config(config: Config) -> Dict:
    """
    Get numeric tolerances and verdict defaults.

    Args:
        config: Config instance

    Returns:
        Dictionary with numeric configuration
    """
    return {
        "rank_cutoff": config.rank_cutoff,
        "margin": config.margin,
        "max_degree": config.max_degree,
    }


def get_runtime_config(config: Config) -> Dict:
    """
    Get parallelism and randomness settings.

    Args:
        config: Config instance

    Returns:
        Dictionary with runtime configuration
    """
    return {
        "threads": config.threads,
        "seed": config.seed,
    }


def get_logging_config(config: Config) -> Dict:
    """
    Get logging configuration in the shape setup_logging expects.

    Args:
        config: Config instance

    Returns:
        Dictionary with logging configuration
    """
    return {
        "log_dir": config.log_dir,
        "log_level": config.log_level,
    }
