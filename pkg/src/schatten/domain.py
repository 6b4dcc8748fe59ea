"""
Domain models for shell sums, decay fits and verdicts.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from utils.errors import EssnormError

ZERO_SINGULAR_VALUE = 1e-13
MIN_FIT_SHELLS = 5


class SchattenError(EssnormError):
    """Base class for shell-sum and fitting failures."""


class FiniteRankTailError(SchattenError):
    """Every shell of the fit window vanishes."""

    def __init__(self, window: Tuple[int, int]):
        super().__init__("finite-rank tail")
        self.window = window


class InsufficientShellsError(SchattenError):
    """Fewer than the required number of positive shells in a fit window."""


class SchattenOverflowError(SchattenError):
    """A shell sum left the floating-point range."""

    def __init__(self, shell: int, p: float):
        super().__init__(f"shell sum overflowed at shell {shell} (p={p})")
        self.shell = shell
        self.p = p


class Verdict(str, Enum):
    """Outcome of an extrapolated compactness or Schatten test."""
    CONVERGED = "converged"
    DIVERGED = "diverged"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class ShellSum:
    """One row of a shell-sum series."""
    n: int
    count: int
    shellsum: float
    cumulative: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shell": self.n,
            "count": self.count,
            "shellsum": self.shellsum,
            "cumulative": self.cumulative,
        }


@dataclass(frozen=True)
class ShellSumSeries:
    """Sums of ``sigma^p`` over each degree shell, with compensated cumulative partials."""
    p: float
    shells: Tuple[ShellSum, ...]

    @property
    def max_degree(self) -> int:
        return self.shells[-1].n if self.shells else -1

    @property
    def partial(self) -> float:
        return self.shells[-1].cumulative if self.shells else 0.0

    def degrees(self) -> List[int]:
        return [s.n for s in self.shells]

    def sums(self) -> List[float]:
        return [s.shellsum for s in self.shells]

    def cumulative(self) -> List[float]:
        return [s.cumulative for s in self.shells]

    def to_dict(self) -> Dict[str, Any]:
        return {"p": self.p, "shells": [s.to_dict() for s in self.shells]}


@dataclass(frozen=True)
class DecayFit:
    """Least-squares line through ``(log n, log value)`` over a window."""
    window: Tuple[int, int]
    slope: float
    intercept: float
    r_squared: float
    used_shells: int
    p_star: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "window": list(self.window),
            "slope": self.slope,
            "intercept": self.intercept,
            "r_squared": self.r_squared,
            "used_shells": self.used_shells,
            "p_star": self.p_star,
        }


@dataclass
class CompactnessVerdict:
    """
    Extrapolated verdict for one operator at one Schatten order.

    ``compactness`` comes from the decay of shell operator norms,
    ``schatten`` from the slope of the shell sums against -1.
    """
    verdict: Verdict
    p: float
    margin: float
    max_degree: int
    compactness: Verdict
    schatten: Verdict
    compactness_fit: Optional[DecayFit] = None
    schatten_fit: Optional[DecayFit] = None
    partial_sum: float = 0.0
    notes: List[str] = field(default_factory=list)
    operator: Dict[str, Any] = field(default_factory=dict)

    @property
    def converged(self) -> bool:
        return self.verdict is Verdict.CONVERGED

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "p": self.p,
            "margin": self.margin,
            "max_degree": self.max_degree,
            "compactness": self.compactness.value,
            "schatten": self.schatten.value,
            "compactness_fit": self.compactness_fit.to_dict() if self.compactness_fit else None,
            "schatten_fit": self.schatten_fit.to_dict() if self.schatten_fit else None,
            "partial_sum": self.partial_sum,
            "notes": list(self.notes),
            "operator": self.operator,
        }


@dataclass
class ConditionReport:
    """Result of checking one operator condition on a weight set."""
    condition: str
    holds: Optional[bool]
    verdict: str
    entries: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "verdict": self.verdict,
            "entries": self.entries,
            "warnings": list(self.warnings),
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ConditionReport":
        return cls(
            condition=data["condition"],
            holds=data.get("holds"),
            verdict=data["verdict"],
            entries=data.get("entries", {}),
            warnings=data.get("warnings", []),
            metadata=data.get("metadata", {}),
        )
