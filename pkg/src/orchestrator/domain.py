"""
Domain models for the report orchestrator.
"""
import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional


class ReportStatus(Enum):
    """Status of a report run."""
    SUCCESS = "success"
    FAILED = "failed"
    PARTIAL = "partial"  # Some steps succeeded but not all


REPORT_STEPS = ("conditions", "ambient", "decomposition", "dimension", "threshold")


@dataclass
class ReportRequest:
    """What a report covers: orders to test and verdict settings."""
    ps: List[float] = field(default_factory=list)
    qs: List[float] = field(default_factory=list)
    max_degree: int = 600
    margin: float = 0.1
    window: Optional[List[int]] = None
    threads: int = 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ps": list(self.ps),
            "qs": list(self.qs),
            "max_degree": self.max_degree,
            "margin": self.margin,
            "window": list(self.window) if self.window else None,
        }


@dataclass
class ReportResult:
    """Result of a report run."""
    status: ReportStatus
    sections: Dict[str, Any] = field(default_factory=dict)
    errors: Dict[str, str] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        """Convert result to dictionary."""
        return {
            "status": self.status.value,
            "sections": self.sections,
            "errors": self.errors,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReportResult":
        """Create result from dictionary."""
        return cls(
            status=ReportStatus(data.get("status", "failed")),
            sections=data.get("sections", {}),
            errors=data.get("errors", {}),
            metadata=data.get("metadata", {}),
        )

    def to_json(self) -> str:
        """Serialize with sorted keys so equal results give identical text."""
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"
