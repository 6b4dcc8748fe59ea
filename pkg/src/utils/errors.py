"""
Base exception for essnorm.

Each package defines its own error hierarchy in its ``domain`` module,
rooted here so callers (the CLI and the report orchestrator) can catch
every library failure in one place.
"""


class EssnormError(Exception):
    """Base class for all library errors."""


class SpecError(EssnormError):
    """Malformed JSON input, carrying the path of the offending field."""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        prefix = f"{field}: " if field else ""
        super().__init__(f"{prefix}{message}")
