"""
Exact Hilbert-Samuel counting for quotients by monomial submodules.

The quotient's piece over a shell has dimension ``sum (k - dim H_beta)``;
cumulative counts are eventually a polynomial in n whose degree is the
dimension d. All arithmetic here is integer or rational.
"""
from fractions import Fraction
from itertools import combinations
from typing import List, Optional, Sequence, Tuple

import numpy as np

from decomp import Block, DecompositionError, Mechanism, full_reduction
from lattice import LatticeRegion, shell_array
from samuel.domain import (
    BlockCensus,
    CountingFunction,
    NoStabilizationError,
    SamuelError,
    SamuelReport,
)
from submodule import VectorSubmodule, fiber_dims
from utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_COUNT_CAP = 2000


def quotient_shell_count(S: VectorSubmodule, n: int) -> int:
    """Dimension of the quotient over the degree-``n`` shell."""
    if n < 0:
        raise SamuelError(f"shell degree must be nonnegative, got {n}")
    points = shell_array(S.m, n)
    return S.k * len(points) - int(fiber_dims(S, points).sum())


def counting_function(S: VectorSubmodule, max_degree: int) -> CountingFunction:
    """Shell and cumulative quotient counts for shells ``0..max_degree``."""
    shells: List[int] = []
    cumulative: List[int] = []
    total = 0
    for n in range(max_degree + 1):
        count = quotient_shell_count(S, n)
        total += count
        shells.append(count)
        cumulative.append(total)
    return CountingFunction(shell_counts=tuple(shells), cumulative=tuple(cumulative))


def quotient_count(S: VectorSubmodule, n: int) -> int:
    """
    Cumulative quotient dimension over shells ``0..n``.

    Args:
        S: Vector submodule
        n: Last shell

    Returns:
        Exact integer count
    """
    if n < 0:
        raise SamuelError(f"shell degree must be nonnegative, got {n}")
    return counting_function(S, n).cumulative[-1]


def _poly_mul_linear(poly: List[Fraction], shift: int) -> List[Fraction]:
    """Multiply by ``(n - shift)``."""
    out = [Fraction(0)] * (len(poly) + 1)
    for power, c in enumerate(poly):
        out[power + 1] += c
        out[power] -= c * shift
    return out


def _trim(poly: List[Fraction]) -> List[Fraction]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def fit_polynomial(start: int, values: Sequence[int], max_power: int) -> Optional[List[Fraction]]:
    """
    Exact polynomial through consecutive integer samples.

    Uses forward differences of the first ``max_power + 1`` samples and
    checks the remaining ones.

    Args:
        start: Abscissa of ``values[0]``; the others follow at steps of one
        values: Samples
        max_power: Largest degree allowed

    Returns:
        Power-basis coefficients (lowest first, trailing zeros trimmed), or
        None when the samples are not polynomial of that degree
    """
    if len(values) < max_power + 2:
        raise SamuelError(f"need at least {max_power + 2} samples for degree {max_power}")
    row = [Fraction(v) for v in values[: max_power + 1]]
    leading = []
    for _ in range(max_power + 1):
        leading.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]

    poly = [Fraction(0)] * (max_power + 1)
    basis = [Fraction(1)]
    factorial = 1
    for r, diff in enumerate(leading):
        if r > 0:
            basis = _poly_mul_linear(basis, start + r - 1)
            factorial *= r
        for power, c in enumerate(basis):
            poly[power] += diff * c / factorial
    poly = _trim(poly)

    for offset, value in enumerate(values):
        n = start + offset
        if sum((c * n ** power for power, c in enumerate(poly)), Fraction(0)) != value:
            return None
    return poly


def _quotient_slabs(block: Block, region: LatticeRegion, last: int, k: int) -> List[LatticeRegion]:
    """
    Slabs of ``region`` on which the quotient fiber is nonzero.

    A split node leaves the slices ``z_a = gamma`` below its level that have
    no generators entirely in the quotient; a filtration node leaves every
    level of its moving axis where the jump spaces so far fall short of
    ``k``, plus the tail when they never reach it.
    """
    if not block.children:
        return [region]
    slabs: List[LatticeRegion] = []
    tensors = [c for c in block.children if c.mechanism is Mechanism.CONE_TENSOR]
    if tensors:
        covered = 0
        level = region.lower[last]
        for child in sorted(tensors, key=lambda c: c.region.lower[last]):
            start = child.region.lower[last]
            if covered < k:
                slabs.extend(region.with_fixed(last, gamma) for gamma in range(level, start))
            covered += child.dim
            level = start
        if covered < k:
            slabs.append(region.with_lower(last, level))
        return slabs

    leveled = next(c for c in block.children if c.mechanism is Mechanism.LEVELED)
    axis = leveled.axis
    slices = {
        dict(c.region.fixed)[axis]: c
        for c in block.children
        if c.mechanism is Mechanism.INDUCTION
    }
    for gamma in range(region.lower[axis], leveled.region.lower[axis]):
        if gamma in slices:
            slabs.extend(_quotient_slabs(slices[gamma], slices[gamma].region, last, k))
        else:
            slabs.append(region.with_fixed(axis, gamma))
    slabs.extend(_quotient_slabs(leveled, leveled.region, last, k))
    return slabs


def _scan_free_sets(S: VectorSubmodule) -> Tuple[Tuple[Tuple[int, ...], ...], bool]:
    """Free sets from quotient fibers at points large on the set and zero elsewhere."""
    alphas = S.alpha_array()
    far = (alphas.max(axis=0) if len(alphas) else np.zeros(S.m, dtype=np.int64)) + 1
    origin = np.zeros((1, S.m), dtype=np.int64)
    nonzero = bool(fiber_dims(S, origin)[0] < S.k)
    found = []
    for size in range(S.m, 0, -1):
        for free in combinations(range(S.m), size):
            point = np.zeros((1, S.m), dtype=np.int64)
            point[0, list(free)] = far[list(free)]
            if fiber_dims(S, point)[0] < S.k:
                found.append(tuple(free))
    return tuple(found), nonzero


def block_census(S: VectorSubmodule) -> BlockCensus:
    """
    Read the coordinate sets along which the quotient is infinite off the
    block decomposition.

    Every block ``sum^k_i`` of the full reduction (and every slice it leaves
    to the quotient) is a slab with ``[i]`` frozen coordinates; the census
    keeps the free axes of the slabs that meet the quotient. When the
    reduction cannot be built the quotient fibers are scanned directly.

    Args:
        S: Vector submodule

    Returns:
        BlockCensus; its dimension is ``m`` minus the fewest frozen coordinates
    """
    try:
        tree = full_reduction(S)
    except DecompositionError as e:
        logger.warning(f"block census falls back to a fiber scan: {e}")
        free_sets, nonzero = _scan_free_sets(S)
        return BlockCensus(m=S.m, free_sets=free_sets, quotient_nonzero=nonzero, source="fiber-scan")

    slabs = _quotient_slabs(tree.root, LatticeRegion.slab(S.m), tree.axis_order[-1], S.k)
    free = {slab.free_axes for slab in slabs if slab.free_axes}
    free_sets = tuple(sorted(free, key=lambda f: (-len(f), f)))
    logger.debug(f"block census: {len(slabs)} quotient slab(s), free sets {free_sets}")
    return BlockCensus(m=S.m, free_sets=free_sets, quotient_nonzero=bool(slabs))


def _start_degree(S: VectorSubmodule) -> int:
    alphas = S.alpha_array()
    spread = int(alphas.max(axis=0).sum()) if len(alphas) else 0
    return 2 * spread + 3 * (S.m + 2) + 10


def dimension(S: VectorSubmodule, max_degree: int = DEFAULT_COUNT_CAP) -> SamuelReport:
    """
    Hilbert-Samuel dimension of the quotient by ``S``.

    The counting range grows (doubling, up to ``max_degree``) until three
    consecutive tail windows give the same exact polynomial.

    Args:
        S: Vector submodule
        max_degree: Cap on the counting range

    Returns:
        SamuelReport with d, the polynomial, the stabilization shell and the
        block census

    Raises:
        NoStabilizationError: No agreement before the cap
    """
    m = S.m
    width = m + 2
    n_max = min(_start_degree(S), max_degree)
    while True:
        if n_max + 1 < 3 * width:
            raise NoStabilizationError(f"cap {max_degree} too small for three windows of {width} shells")
        counting = counting_function(S, n_max)
        fits = []
        for w in range(3):
            hi = n_max - w * width
            lo = hi - width + 1
            fits.append(fit_polynomial(lo, counting.cumulative[lo: hi + 1], m))
        if all(f is not None for f in fits) and fits[0] == fits[1] == fits[2]:
            break
        if n_max >= max_degree:
            raise NoStabilizationError(f"counts not polynomial by shell {max_degree}")
        logger.info(f"counts not yet polynomial at shell {n_max}; extending")
        n_max = min(2 * n_max, max_degree)

    poly = fits[0]
    d = len(poly) - 1 if poly else -1

    def cumulative_at(n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        return sum((c * n ** power for power, c in enumerate(poly)), Fraction(0))

    stable_from = n_max
    while stable_from > 0:
        n = stable_from - 1
        if counting.shell_counts[n] != cumulative_at(n) - cumulative_at(n - 1):
            break
        stable_from = n

    census = block_census(S)
    report = SamuelReport(
        d=d,
        polynomial=tuple(poly),
        stabilization_shell=stable_from,
        max_degree=n_max,
        census=census,
        counting=counting,
    )
    if not report.agrees:
        logger.warning(f"counting dimension {d} differs from block census {census.dimension}")
    logger.info(f"Hilbert-Samuel dimension {d}, stable from shell {stable_from}")
    return report
