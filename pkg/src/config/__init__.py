"""
Configuration package for essnorm.
"""
from config.settings import (
    Config,
    ConfigError,
    load_config,
    get_numeric_config,
    get_runtime_config,
    get_logging_config,
)

__all__ = [
    "Config",
    "ConfigError",
    "load_config",
    "get_numeric_config",
    "get_runtime_config",
    "get_logging_config",
]
