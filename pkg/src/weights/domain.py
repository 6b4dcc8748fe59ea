"""
Domain models for weight sets.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from lattice.domain import as_multi_index
from utils.errors import SpecError
from weights.families import (
    BUILTIN_FAMILIES,
    EXTEND_POLICIES,
    FAMILIES,
    CustomTableFamily,
    WeightError,
    WeightFamily,
)


@dataclass(frozen=True)
class StepRatio:
    """The shift coefficient ``w_i(alpha) = lambda[alpha + e_i] / lambda[alpha]``."""
    axis: int
    alpha: Tuple[int, ...]
    value: float

    @property
    def contractive(self) -> bool:
        return self.value <= 1.0


@dataclass(frozen=True)
class WeightSet:
    """
    The map alpha -> lambda_alpha > 0 giving the norm of each monomial.

    Built-in families are normalized so ``lambda_0 = 1``. Custom weights are
    a finite table plus an extension policy.
    """
    m: int
    family: str = "drury_arveson"
    table: Optional[Dict[Tuple[int, ...], float]] = None
    extend: str = "error"
    _evaluator: WeightFamily = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1:
            raise WeightError(f"dimension must be positive, got {self.m}")
        if self.family == "custom":
            if self.table is None:
                raise WeightError("custom weights need a table")
            evaluator = CustomTableFamily(self.m, self.table, self.extend)
        elif self.family in FAMILIES:
            evaluator = FAMILIES[self.family](self.m)
        else:
            raise WeightError(f"unknown weight family {self.family!r}")
        object.__setattr__(self, "_evaluator", evaluator)

    @property
    def evaluator(self) -> WeightFamily:
        return self._evaluator

    def _points(self, points: Any) -> np.ndarray:
        arr = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        if (arr < 0).any():
            raise WeightError("weights are only defined on the nonnegative lattice")
        return arr

    def log_lambda_array(self, points: Any) -> np.ndarray:
        return self._evaluator.log_lambda(self._points(points))

    def lam_array(self, points: Any) -> np.ndarray:
        return np.exp(self.log_lambda_array(points))

    def ratio_array(self, axis: int, points: Any) -> np.ndarray:
        """Step ratios along ``axis`` for an ``(N, m)`` batch of points."""
        if not 0 <= axis < self.m:
            raise WeightError(f"axis {axis} out of range for m={self.m}")
        return np.exp(self._evaluator.log_ratio(axis, self._points(points)))

    def lam(self, alpha: Any) -> float:
        """Norm of the monomial z^alpha."""
        alpha = as_multi_index(alpha)
        if alpha.m != self.m:
            raise WeightError(f"index {alpha.entries} does not have {self.m} coordinates")
        return float(self.lam_array([alpha.entries])[0])

    def ratio(self, axis: int, alpha: Any) -> float:
        """Step ratio ``w_axis(alpha)``."""
        alpha = as_multi_index(alpha)
        if alpha.m != self.m:
            raise WeightError(f"index {alpha.entries} does not have {self.m} coordinates")
        return float(self.ratio_array(axis, [alpha.entries])[0])

    def step(self, axis: int, alpha: Any) -> StepRatio:
        alpha = as_multi_index(alpha)
        return StepRatio(axis=axis, alpha=alpha.entries, value=self.ratio(axis, alpha))

    @property
    def is_symmetric(self) -> bool:
        """True when permuting coordinates leaves the weights unchanged."""
        return self.family in BUILTIN_FAMILIES

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"m": self.m, "family": self.family}
        if self.family == "custom":
            data["table"] = [
                {"alpha": list(alpha), "lambda": value}
                for alpha, value in sorted(self.table.items())
            ]
            data["extend"] = self.extend
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "WeightSet":
        if not isinstance(data, dict):
            raise SpecError("expected an object", field="/")
        m = data.get("m")
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise SpecError("dimension must be a positive integer", field="/m")
        family = data.get("family", "drury_arveson")
        if family != "custom" and family not in FAMILIES:
            raise SpecError(f"unknown family {family!r}", field="/family")
        if family != "custom":
            return cls(m=m, family=family)

        rows = data.get("table")
        if not isinstance(rows, list) or not rows:
            raise SpecError("custom weights need a nonempty table", field="/table")
        table: Dict[Tuple[int, ...], float] = {}
        for idx, row in enumerate(rows):
            path = f"/table/{idx}"
            if not isinstance(row, dict):
                raise SpecError("expected an object", field=path)
            alpha = row.get("alpha")
            if (
                not isinstance(alpha, list)
                or len(alpha) != m
                or any(not isinstance(a, int) or isinstance(a, bool) or a < 0 for a in alpha)
            ):
                raise SpecError(f"expected {m} nonnegative integers", field=f"{path}/alpha")
            value = row.get("lambda")
            if not isinstance(value, (int, float)) or isinstance(value, bool) or not value > 0:
                raise SpecError("expected a positive number", field=f"{path}/lambda")
            table[tuple(alpha)] = float(value)
        extend = data.get("extend", "error")
        if extend not in EXTEND_POLICIES:
            raise SpecError(f"expected one of {list(EXTEND_POLICIES)}", field="/extend")
        try:
            return cls(m=m, family="custom", table=table, extend=extend)
        except WeightError as e:
            raise SpecError(str(e), field="/table")
