"""
Shell singular values and Schatten partial sums.

A displacement-homogeneous operator maps distinct lattice points to
distinct targets, so its singular values on a shell are the union of the
singular values of its blocks there.
"""
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np

from schatten.domain import (
    ZERO_SINGULAR_VALUE,
    SchattenError,
    SchattenOverflowError,
    ShellSum,
    ShellSumSeries,
)
from shiftops import LatticeOperator
from utils.logger import get_logger

logger = get_logger(__name__)


def shell_singular_values(op: LatticeOperator, n: int) -> np.ndarray:
    """
    Singular values of an operator on the degree-``n`` shell.

    Each block contributes ``min(dim source fiber, dim target fiber)``
    values, so zero entries of a nonzero scalar fiber are kept.

    Args:
        op: Lattice operator
        n: Shell degree

    Returns:
        1-D array sorted in descending order
    """
    if n < 0:
        raise SchattenError(f"shell degree must be nonnegative, got {n}")
    points = op.shell_points(n)
    if len(points) == 0:
        return np.zeros(0)
    src_dims = op.domain.dims(points)
    keep = src_dims > 0
    if not keep.any():
        return np.zeros(0)
    points = points[keep]
    ranks = np.minimum(src_dims[keep], op.domain.dims(points + op.delta))
    blocks = op.blocks(points)
    if op.k == 1:
        values = np.abs(blocks[:, 0, 0])[ranks > 0]
    else:
        sv = np.linalg.svd(blocks, compute_uv=False)
        values = sv[np.arange(op.k)[None, :] < ranks[:, None]]
    return np.sort(values)[::-1]


class ShellSpectra:
    """
    Singular values of one operator on shells ``0..max_degree``, computed once.

    Shells are evaluated on a thread pool and collected in shell order, so
    every derived sum is independent of the worker count.
    """

    def __init__(self, op: LatticeOperator, max_degree: int, threads: int = 1):
        if max_degree < 0:
            raise SchattenError(f"max degree must be nonnegative, got {max_degree}")
        self.op = op
        self.max_degree = max_degree
        self.threads = max(1, int(threads))
        self._values: List[np.ndarray] = []
        self._counts: List[int] = []
        self._compute()

    def _shell(self, n: int):
        values = shell_singular_values(self.op, n)
        return len(values), values[values > ZERO_SINGULAR_VALUE]

    def _compute(self):
        degrees = range(self.max_degree + 1)
        logger.info(
            f"shell spectra for {self.op.label or self.op.kind}: "
            f"shells 0..{self.max_degree} on {self.threads} thread(s)"
        )
        if self.threads == 1:
            results = [self._shell(n) for n in degrees]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                results = list(pool.map(self._shell, degrees))
        for count, values in results:
            self._counts.append(count)
            self._values.append(values)

    def values(self, n: int) -> np.ndarray:
        """Nonzero singular values on shell ``n``."""
        return self._values[n]

    def count(self, n: int) -> int:
        return self._counts[n]

    def shell_norms(self) -> np.ndarray:
        """Operator norm of each shell block, zero for vanishing shells."""
        return np.array([v[0] if len(v) else 0.0 for v in self._values])

    def series(self, p: float, max_degree: Optional[int] = None) -> ShellSumSeries:
        """
        Shell sums of ``sigma^p`` with compensated cumulative partials.

        Args:
            p: Schatten order (p > 0)
            max_degree: Last shell, defaults to every computed shell

        Returns:
            ShellSumSeries
        """
        if not p > 0:
            raise SchattenError(f"Schatten order must be positive, got {p}")
        top = self.max_degree if max_degree is None else max_degree
        if top > self.max_degree:
            raise SchattenError(f"shell {top} beyond computed degree {self.max_degree}")
        sums: List[float] = []
        rows: List[ShellSum] = []
        for n in range(top + 1):
            with np.errstate(over="ignore"):
                powers = self._values[n] ** p
            shellsum = math.fsum(powers.tolist())
            if not math.isfinite(shellsum):
                raise SchattenOverflowError(n, p)
            sums.append(shellsum)
            cumulative = math.fsum(sums)
            if not math.isfinite(cumulative):
                raise SchattenOverflowError(n, p)
            rows.append(ShellSum(n=n, count=self._counts[n], shellsum=shellsum, cumulative=cumulative))
        return ShellSumSeries(p=float(p), shells=tuple(rows))


def schatten_partial(op: LatticeOperator, p: float, max_degree: int, threads: int = 1):
    """
    Partial Schatten sum ``sum over shells 0..N of sum sigma^p``.

    Args:
        op: Lattice operator
        p: Schatten order
        max_degree: Last shell N
        threads: Worker threads for shell evaluation

    Returns:
        Tuple of (partial sum, ShellSumSeries)
    """
    series = ShellSpectra(op, max_degree, threads).series(p)
    return series.partial, series
