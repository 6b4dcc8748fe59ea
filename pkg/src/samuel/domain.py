"""
Domain models for Hilbert-Samuel counting of monomial quotients.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple, Union

from utils.errors import EssnormError


class SamuelError(EssnormError):
    """Base class for counting failures."""


class NoStabilizationError(SamuelError):
    """Counts did not become polynomial before the degree cap."""


def encode_fraction(value: Fraction) -> Union[int, str]:
    """Integers stay integers; other rationals become ``"a/b"``."""
    if value.denominator == 1:
        return int(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class CountingFunction:
    """Quotient dimension per shell and cumulatively, as exact integers."""
    shell_counts: Tuple[int, ...]
    cumulative: Tuple[int, ...]

    @property
    def max_degree(self) -> int:
        return len(self.shell_counts) - 1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "shell_counts": list(self.shell_counts),
            "cumulative": list(self.cumulative),
        }


@dataclass(frozen=True)
class BlockCensus:
    """
    Coordinate sets along which the quotient stays infinite.

    A free set F qualifies when some block of the decomposition with free
    axes F meets the quotient; that block freezes the other ``m - |F|``
    coordinates. ``source`` says whether the sets were read off the block
    tree or scanned from quotient fibers.
    """
    m: int
    free_sets: Tuple[Tuple[int, ...], ...]
    quotient_nonzero: bool
    source: str = "decomposition"

    @property
    def min_codim(self) -> Optional[int]:
        if not self.free_sets:
            return None
        return self.m - max(len(f) for f in self.free_sets)

    @property
    def dimension(self) -> int:
        if self.free_sets:
            return self.m - self.min_codim
        return 0 if self.quotient_nonzero else -1

    def to_dict(self) -> Dict[str, Any]:
        return {
            "free_sets": [[a + 1 for a in f] for f in self.free_sets],
            "min_codim": self.min_codim,
            "dimension": self.dimension,
            "source": self.source,
        }


@dataclass(frozen=True)
class SamuelReport:
    """Dimension of a quotient from its counting polynomial, cross-checked by the block census."""
    d: int
    polynomial: Tuple[Fraction, ...]
    stabilization_shell: int
    max_degree: int
    census: BlockCensus
    counting: CountingFunction = field(repr=False)

    @property
    def agrees(self) -> bool:
        return self.d == self.census.dimension

    def value(self, n: int) -> Fraction:
        """The counting polynomial at ``n``."""
        return sum((c * n ** power for power, c in enumerate(self.polynomial)), Fraction(0))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "stabilization_shell": self.stabilization_shell,
            "polynomial": [encode_fraction(c) for c in self.polynomial],
            "max_degree": self.max_degree,
            "block_dimension": self.census.dimension,
            "blocks": self.census.to_dict(),
            "agree": self.agrees,
        }


@dataclass
class ThresholdCheck:
    """Quotient commutator verdicts at one order q."""
    q: float
    expected: str
    verdict: str
    agrees: Optional[bool]
    entries: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "expected": self.expected,
            "verdict": self.verdict,
            "agrees": self.agrees,
            "entries": self.entries,
        }


@dataclass
class ThresholdReport:
    """Whether quotient commutators converge exactly for ``q > d``."""
    d: int
    checks: List[ThresholdCheck] = field(default_factory=list)
    caveats: List[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(c.agrees is not False for c in self.checks)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "d": self.d,
            "consistent": self.consistent,
            "checks": [c.to_dict() for c in self.checks],
            "caveats": list(self.caveats),
        }
