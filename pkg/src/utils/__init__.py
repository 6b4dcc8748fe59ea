"""
Utility package for essnorm.
"""
from utils.errors import EssnormError, SpecError
from utils.logger import (
    setup_logging,
    get_logger,
)

__all__ = [
    "EssnormError",
    "SpecError",
    "setup_logging",
    "get_logger",
]
