"""
Domain models for the dense truncation oracle.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from submodule import VectorSubmodule
from utils.errors import EssnormError

MAX_ORACLE_DEGREE = 16
MAX_ORACLE_VARIABLES = 3


class OracleError(EssnormError):
    """Raised when an operator cannot be reproduced densely."""


class OracleSizeError(OracleError):
    """The requested truncation exceeds the size guard."""


@dataclass(frozen=True)
class DenseTruncation:
    """
    A module truncated at degree N with explicit dense matrices.

    The basis is every pair (beta, j) with ``|beta| <= N`` in (degree, lex)
    order and j indexing an orthonormal frame of the fiber over beta.
    ``embedding`` places that basis inside the ambient coordinates
    ``(beta, c)``, c in C^k, which is also the layout of ``materialize``.
    """
    m: int
    k: int
    max_degree: int
    kind: str
    points: np.ndarray = field(repr=False)
    frames: Tuple[np.ndarray, ...] = field(repr=False)
    embedding: np.ndarray = field(repr=False)
    ambient_shifts: Tuple[np.ndarray, ...] = field(repr=False)
    shifts: Tuple[np.ndarray, ...] = field(repr=False)
    submodule: Optional[VectorSubmodule] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return int(self.embedding.shape[1])

    def basis(self) -> List[Tuple[Tuple[int, ...], int]]:
        out = []
        for point, frame in zip(self.points, self.frames):
            beta = tuple(int(v) for v in point)
            out.extend((beta, j) for j in range(frame.shape[1]))
        return out

    def fiber_dims(self) -> np.ndarray:
        return np.array([f.shape[1] for f in self.frames], dtype=np.int64)

    def shift(self, axis: int) -> np.ndarray:
        """The shift (or its restriction or compression) in basis coordinates."""
        if not 0 <= axis < self.m:
            raise OracleError(f"axis {axis} out of range for m={self.m}")
        return self.shifts[axis]

    def commutator(self, i: int, j: int) -> np.ndarray:
        """``Y_i^* Y_j - Y_j Y_i^*`` by literal matrix products."""
        yi, yj = self.shift(i), self.shift(j)
        return yi.conj().T @ yj - yj @ yi.conj().T

    def edge_gram(self, axis: int) -> np.ndarray:
        y = self.shift(axis)
        return y.conj().T @ y

    def lift(self, matrix: np.ndarray) -> np.ndarray:
        """Basis-coordinate matrix expressed in ambient coordinates."""
        v = self.embedding
        return v @ matrix @ v.conj().T

    def projector(self) -> np.ndarray:
        return self.embedding @ self.embedding.conj().T

    def ambient_degrees(self) -> np.ndarray:
        """Degree of each ambient coordinate."""
        return np.repeat(self.points.sum(axis=1), self.k)

    def is_hermitian(self, matrix: np.ndarray, tol: float = 1e-14) -> bool:
        return bool(np.abs(matrix - matrix.conj().T).max(initial=0.0) <= tol)

    def describe(self) -> Dict[str, Any]:
        return {
            "m": self.m,
            "k": self.k,
            "max_degree": self.max_degree,
            "kind": self.kind,
            "size": self.size,
        }


@dataclass(frozen=True)
class OracleComparison:
    """Deviation between a closed-form operator and its dense counterpart."""
    label: str
    max_degree: int
    deviation: float
    shell_deviation: Optional[float] = None
    hermitian: Optional[bool] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "label": self.label,
            "max_degree": self.max_degree,
            "deviation": self.deviation,
            "shell_deviation": self.shell_deviation,
            "hermitian": self.hermitian,
        }
