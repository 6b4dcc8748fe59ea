"""
Condition checks on weight sets over a degree truncation.

Points whose step ratio is undefined (a successor outside an ``error``
table) are skipped and counted, never raised.
"""
from dataclasses import dataclass
from typing import Any, Dict, Optional

import numpy as np

from lattice import MultiIndex, shell_array
from utils.logger import get_logger
from weights.domain import WeightSet
from weights.families import WeightUndefinedError

logger = get_logger(__name__)

TOLERANCE = 1e-12


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of a pointwise inequality sweep."""
    name: str
    holds: bool
    max_degree: int
    witness: Optional[MultiIndex] = None
    axis: Optional[int] = None
    value: Optional[float] = None
    max_value: float = 0.0
    undefined: int = 0

    @property
    def verdict(self) -> str:
        return "holds" if self.holds else "violated"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition": self.name,
            "verdict": self.verdict,
            "max_degree": self.max_degree,
            "witness": self.witness.to_list() if self.witness else None,
            "axis": self.axis,
            "value": self.value,
            "max_value": self.max_value,
            "undefined": self.undefined,
        }


def _shell_ratios(W: WeightSet, points: np.ndarray) -> np.ndarray:
    """
    Step ratios for a batch of points, one column per axis.

    Entries a custom table cannot supply are NaN.
    """
    ratios = np.full((len(points), W.m), np.nan)
    for axis in range(W.m):
        try:
            ratios[:, axis] = W.ratio_array(axis, points)
        except WeightUndefinedError:
            for row, point in enumerate(points):
                try:
                    ratios[row, axis] = W.ratio(axis, tuple(int(v) for v in point))
                except WeightUndefinedError:
                    continue
    return ratios


def _fold_max(worst: float, values: np.ndarray) -> float:
    defined = values[~np.isnan(values)]
    return max(worst, float(defined.max())) if defined.size else worst


def check_contractive(W: WeightSet, max_degree: int) -> ConditionVerdict:
    """
    Check ``w_i(alpha) <= 1`` for every axis and every ``|alpha| <= max_degree``.

    Args:
        W: Weight set
        max_degree: Largest degree swept

    Returns:
        ConditionVerdict with the first witness in (degree, lex, axis) order
    """
    worst = 0.0
    undefined = 0
    for n in range(max_degree + 1):
        points = shell_array(W.m, n)
        ratios = _shell_ratios(W, points)
        worst = _fold_max(worst, ratios)
        # NaN compares False, so undefined entries never witness
        bad = ratios > 1.0 + TOLERANCE
        if bad.any():
            row = int(np.argmax(bad.any(axis=1)))
            axis = int(np.argmax(bad[row]))
            undefined += int(np.isnan(ratios[:row]).any(axis=1).sum())
            witness = MultiIndex(tuple(int(v) for v in points[row]))
            logger.info(f"contractivity fails at {witness.entries} axis {axis}")
            return ConditionVerdict(
                name="contractive",
                holds=False,
                max_degree=max_degree,
                witness=witness,
                axis=axis,
                value=float(ratios[row, axis]),
                max_value=worst,
                undefined=undefined,
            )
        undefined += int(np.isnan(ratios).any(axis=1).sum())
    if undefined:
        logger.warning(f"contractivity skipped {undefined} points with undefined weights")
    return ConditionVerdict(
        name="contractive", holds=True, max_degree=max_degree, max_value=worst, undefined=undefined
    )


def check_spherical(W: WeightSet, max_degree: int) -> ConditionVerdict:
    """
    Check the spherical-contraction inequality on a truncation.

    The sum of ``Z_i^* Z_i`` is diagonal with entry ``sum_i w_i(alpha)^2``.
    A partial sum over the defined axes that already exceeds one is a
    witness; otherwise a point with an undefined ratio is skipped.

    Args:
        W: Weight set
        max_degree: Largest degree swept

    Returns:
        ConditionVerdict with the first violating point and its sum
    """
    worst = 0.0
    undefined = 0
    for n in range(max_degree + 1):
        points = shell_array(W.m, n)
        ratios = _shell_ratios(W, points)
        missing = np.isnan(ratios).any(axis=1)
        sums = np.nansum(ratios ** 2, axis=1)
        worst = _fold_max(worst, np.where(missing, np.nan, sums))
        bad = sums > 1.0 + TOLERANCE
        if bad.any():
            row = int(np.argmax(bad))
            undefined += int(missing[:row].sum())
            witness = MultiIndex(tuple(int(v) for v in points[row]))
            logger.info(f"spherical contraction fails at {witness.entries}, sum {sums[row]:.6g}")
            return ConditionVerdict(
                name="spherical",
                holds=False,
                max_degree=max_degree,
                witness=witness,
                value=float(sums[row]),
                max_value=max(worst, float(sums[row])),
                undefined=undefined,
            )
        undefined += int(missing.sum())
    if undefined:
        logger.warning(f"spherical sweep skipped {undefined} points with undefined weights")
    return ConditionVerdict(
        name="spherical", holds=True, max_degree=max_degree, max_value=worst, undefined=undefined
    )
