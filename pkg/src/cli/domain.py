"""
Domain models for the command-line front end.
"""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from utils.errors import EssnormError, SpecError

SUBCOMMANDS = (
    "weights-check",
    "commutator",
    "schatten",
    "decompose",
    "audit",
    "generators",
    "dimension",
    "zeroset",
    "oracle-compare",
    "report",
)

OUTPUT_FORMATS = ("json", "csv", "text")

EXIT_OK = 0
EXIT_INPUT_ERROR = 1
EXIT_STRICT_FAILURE = 2


class UsageError(EssnormError):
    """Bad command-line arguments."""


@dataclass
class RunConfig:
    """
    Everything one invocation depends on.

    Weight and submodule specs are kept in their JSON form so the config
    round-trips losslessly.
    """
    command: str
    weights: Optional[Dict[str, Any]] = None
    submodule: Optional[Dict[str, Any]] = None
    params: Dict[str, Any] = field(default_factory=dict)
    output_format: str = "json"
    out: Optional[str] = None
    strict: bool = False
    seed: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "weights": self.weights,
            "submodule": self.submodule,
            "params": dict(self.params),
            "output_format": self.output_format,
            "out": self.out,
            "strict": self.strict,
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunConfig":
        if not isinstance(data, dict):
            raise SpecError("expected an object", field="/")
        command = data.get("command")
        if command not in SUBCOMMANDS:
            raise SpecError(f"unknown subcommand {command!r}", field="/command")
        output_format = data.get("output_format", "json")
        if output_format not in OUTPUT_FORMATS:
            raise SpecError(f"unknown format {output_format!r}", field="/output_format")
        params = data.get("params", {})
        if not isinstance(params, dict):
            raise SpecError("expected an object", field="/params")
        return cls(
            command=command,
            weights=data.get("weights"),
            submodule=data.get("submodule"),
            params=dict(params),
            output_format=output_format,
            out=data.get("out"),
            strict=bool(data.get("strict", False)),
            seed=int(data.get("seed", 0)),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass
class CommandOutput:
    """
    What a subcommand produced.

    ``data`` is the JSON payload; ``csv_rows`` (header first), ``csv_text``
    and ``text`` are the alternative renderings when the command supports them.
    ``strict_failure`` marks a diverged or violated verdict.
    """
    data: Dict[str, Any] = field(default_factory=dict)
    csv_rows: Optional[List[List[Any]]] = None
    csv_text: Optional[str] = None
    text: Optional[str] = None
    strict_failure: bool = False
