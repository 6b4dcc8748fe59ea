"""
CLI package for essnorm.
"""
from cli.domain import (
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_STRICT_FAILURE,
    OUTPUT_FORMATS,
    SUBCOMMANDS,
    CommandOutput,
    RunConfig,
    UsageError,
)
from cli.main import build_parser, render, run

__all__ = [
    "EXIT_INPUT_ERROR",
    "EXIT_OK",
    "EXIT_STRICT_FAILURE",
    "OUTPUT_FORMATS",
    "SUBCOMMANDS",
    "CommandOutput",
    "RunConfig",
    "UsageError",
    "build_parser",
    "render",
    "run",
]
