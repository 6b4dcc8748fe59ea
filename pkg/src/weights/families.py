"""
Weight families.

Each family evaluates ``log lambda`` on batches of lattice points and the
log step ratio ``log(lambda[alpha + e_i] / lambda[alpha])``. Factorial
families work in log-gamma space so high-degree shells never overflow.
"""
from abc import ABC, abstractmethod
from typing import Dict, Tuple

import numpy as np
from scipy.special import gammaln

from utils.errors import EssnormError


class WeightError(EssnormError):
    """Base class for weight errors."""


class WeightUndefinedError(WeightError):
    """Raised when a custom table has no value for a requested point."""


EXTEND_POLICIES = ("error", "product_extend")


class WeightFamily(ABC):
    """Abstract base class for weight families."""

    name: str = ""

    def __init__(self, m: int):
        self.m = m

    @abstractmethod
    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        """
        Natural log of the monomial norms.

        Args:
            points: ``(N, m)`` int array of nonnegative points

        Returns:
            ``(N,)`` float array
        """
        pass

    def log_ratio(self, axis: int, points: np.ndarray) -> np.ndarray:
        """Log step ratio along ``axis``; families with closed forms override this."""
        stepped = points.copy()
        stepped[:, axis] += 1
        return self.log_lambda(stepped) - self.log_lambda(points)


def _degrees(points: np.ndarray) -> np.ndarray:
    return points.sum(axis=1)


class DruryArvesonFamily(WeightFamily):
    """lambda = sqrt(alpha! / |alpha|!)."""

    name = "drury_arveson"

    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        return 0.5 * (gammaln(points + 1.0).sum(axis=1) - gammaln(_degrees(points) + 1.0))

    def log_ratio(self, axis: int, points: np.ndarray) -> np.ndarray:
        return 0.5 * (np.log(points[:, axis] + 1.0) - np.log(_degrees(points) + 1.0))


class PaperLiteralFamily(WeightFamily):
    """lambda = alpha! / |alpha|! taken without the square root."""

    name = "paper_literal"

    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        return gammaln(points + 1.0).sum(axis=1) - gammaln(_degrees(points) + 1.0)

    def log_ratio(self, axis: int, points: np.ndarray) -> np.ndarray:
        return np.log(points[:, axis] + 1.0) - np.log(_degrees(points) + 1.0)


class HardyBallLikeFamily(WeightFamily):
    """lambda = sqrt((m-1)! alpha! / (|alpha| + m - 1)!)."""

    name = "hardy_ball_like"

    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        m = float(self.m)
        return 0.5 * (
            gammaln(m) + gammaln(points + 1.0).sum(axis=1) - gammaln(_degrees(points) + m)
        )

    def log_ratio(self, axis: int, points: np.ndarray) -> np.ndarray:
        return 0.5 * (np.log(points[:, axis] + 1.0) - np.log(_degrees(points) + float(self.m)))


class BergmanBallLikeFamily(WeightFamily):
    """lambda = sqrt(m! alpha! / (|alpha| + m)!)."""

    name = "bergman_ball_like"

    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        m = float(self.m)
        return 0.5 * (
            gammaln(m + 1.0) + gammaln(points + 1.0).sum(axis=1) - gammaln(_degrees(points) + m + 1.0)
        )

    def log_ratio(self, axis: int, points: np.ndarray) -> np.ndarray:
        return 0.5 * (np.log(points[:, axis] + 1.0) - np.log(_degrees(points) + self.m + 1.0))


class UnweightedFamily(WeightFamily):
    """All monomials have norm one; the shifts are isometries."""

    name = "unweighted"

    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        return np.zeros(len(points))

    def log_ratio(self, axis: int, points: np.ndarray) -> np.ndarray:
        return np.zeros(len(points))


class CustomTableFamily(WeightFamily):
    """
    Finite table of weights with an extension policy.

    ``error`` refuses points outside the table. ``product_extend`` needs a
    full box ``[0, D]`` and continues each axis with the ratio frozen at the
    table edge: ``lambda[alpha] = lambda[gamma] * prod(rho_i ** (alpha_i - gamma_i))``
    where ``gamma`` clamps ``alpha`` into the box.
    """

    name = "custom"

    def __init__(self, m: int, table: Dict[Tuple[int, ...], float], extend: str = "error"):
        super().__init__(m)
        if extend not in EXTEND_POLICIES:
            raise WeightError(f"unknown extension policy {extend!r}")
        if not table:
            raise WeightError("custom weight table is empty")
        for alpha, value in table.items():
            if len(alpha) != m:
                raise WeightError(f"table entry {alpha} does not have {m} coordinates")
            if not value > 0 or not np.isfinite(value):
                raise WeightError(f"weight at {alpha} must be positive and finite, got {value}")
        if (0,) * m not in table:
            raise WeightError("custom weight table must contain the origin")
        self.extend = extend
        self._log_table = {tuple(a): float(np.log(v)) for a, v in table.items()}

        self._box = None
        self._log_rho = None
        if extend == "product_extend":
            box = np.array(list(self._log_table.keys())).max(axis=0)
            expected = int(np.prod(box + 1))
            if len(self._log_table) != expected:
                raise WeightError("product_extend requires a full box table [0, D]")
            log_rho = np.zeros(m)
            for axis in range(m):
                top = int(box[axis])
                if top > 0:
                    edge = [0] * m
                    edge[axis] = top
                    below = list(edge)
                    below[axis] = top - 1
                    log_rho[axis] = self._log_table[tuple(edge)] - self._log_table[tuple(below)]
            self._box = box.astype(np.int64)
            self._log_rho = log_rho

    def log_lambda(self, points: np.ndarray) -> np.ndarray:
        out = np.empty(len(points))
        if self.extend == "error":
            for row, point in enumerate(points):
                key = tuple(int(v) for v in point)
                if key not in self._log_table:
                    raise WeightUndefinedError(f"weight undefined at {key}")
                out[row] = self._log_table[key]
            return out
        clamped = np.minimum(points, self._box)
        for row, point in enumerate(clamped):
            out[row] = self._log_table[tuple(int(v) for v in point)]
        return out + ((points - clamped) * self._log_rho).sum(axis=1)


FAMILIES = {
    DruryArvesonFamily.name: DruryArvesonFamily,
    PaperLiteralFamily.name: PaperLiteralFamily,
    HardyBallLikeFamily.name: HardyBallLikeFamily,
    BergmanBallLikeFamily.name: BergmanBallLikeFamily,
    UnweightedFamily.name: UnweightedFamily,
}

BUILTIN_FAMILIES = tuple(FAMILIES.keys())
