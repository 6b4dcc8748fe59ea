"""
Multi-index combinatorics.

Closures and minimal generators of shift-invariant sets, corners and
cofinite differences, slices, degree shells and coordinate zero sets.
All enumerations are lexicographic in the entries.
"""
from functools import lru_cache
from itertools import combinations, product
from typing import Any, FrozenSet, Iterable, List, Tuple, Union

import numpy as np

from lattice.domain import (
    CofiniteDifference,
    EmptySetError,
    LatticeError,
    MultiIndex,
    MultiSlice,
    ShiftInvariantSet,
    as_multi_index,
    _check_same_dim,
)
from utils.logger import get_logger

logger = get_logger(__name__)


def closure(points: Iterable[Any], m: int = None) -> ShiftInvariantSet:
    """
    Smallest shift-invariant set containing ``points``.

    Args:
        points: Finite collection of multi-indices (tuples, lists or MultiIndex)
        m: Dimension; required only when ``points`` is empty

    Returns:
        ShiftInvariantSet generated by the minimal elements of ``points``
    """
    pts = [as_multi_index(p) for p in points]
    if not pts:
        if m is None:
            raise LatticeError("dimension is required for an empty generating set")
        return ShiftInvariantSet.empty(m)
    dim = pts[0].m if m is None else m
    for p in pts:
        _check_same_dim(dim, p.m)
    return ShiftInvariantSet(dim, tuple(pts))


def minimal_generators(
    source: Union[ShiftInvariantSet, Iterable[Any]],
) -> Tuple[MultiIndex, ...]:
    """Unique minimal antichain of a set or of a redundant generator list."""
    if isinstance(source, ShiftInvariantSet):
        return source.generators
    return closure(source).generators


def corner(B: ShiftInvariantSet) -> MultiIndex:
    """Componentwise minimum over the generators; ``B`` lies in the cone over it."""
    if B.is_empty:
        raise EmptySetError("empty set has no corner")
    gens = B.generator_array()
    return MultiIndex(tuple(int(v) for v in gens.min(axis=0)))


def cofinite_difference(B: ShiftInvariantSet) -> CofiniteDifference:
    """
    Points of the cone over the corner that are missing from ``B``.

    For every axis i the ray from the corner along e_i enters ``B`` exactly
    when some generator agrees with the corner off axis i. If a ray never
    enters, the difference is infinite and that ray is the witness;
    otherwise the difference sits in the box spanned by the corner and the
    entry points of the rays.

    Args:
        B: Nonempty shift-invariant set

    Returns:
        CofiniteDifference with the lex-ordered finite difference or a witness ray
    """
    apex = corner(B)
    gens = B.generator_array()
    base = np.array(apex.entries, dtype=np.int64)
    upper = []
    for axis in range(B.m):
        others = [a for a in range(B.m) if a != axis]
        hits = np.all(gens[:, others] == base[others], axis=1)
        if not hits.any():
            logger.debug(f"ray from {apex.entries} along axis {axis} misses the set")
            return CofiniteDifference(corner=apex, finite=False, witness_axis=axis)
        upper.append(int(gens[hits, axis].min()))

    ranges = [range(lo, hi + 1) for lo, hi in zip(apex.entries, upper)]
    box = np.array(list(product(*ranges)), dtype=np.int64).reshape(-1, B.m)
    outside = box[~B.contains_array(box)]
    points = tuple(MultiIndex(tuple(int(v) for v in row)) for row in outside)
    return CofiniteDifference(
        corner=apex,
        finite=True,
        points=tuple(sorted(points)),
        box_upper=MultiIndex(tuple(upper)),
    )


def slice_set(B: ShiftInvariantSet, axis: int, level: int) -> ShiftInvariantSet:
    """
    The slice ``{alpha in B : alpha[axis] == level}`` re-indexed over m-1 variables.

    Args:
        B: Shift-invariant set in m variables
        axis: Frozen axis (0-based)
        level: Frozen value

    Returns:
        ShiftInvariantSet over the remaining m-1 variables
    """
    if not 0 <= axis < B.m:
        raise LatticeError(f"axis {axis} out of range for m={B.m}")
    if level < 0:
        raise LatticeError(f"slice level must be nonnegative, got {level}")
    kept = [g.drop(axis) for g in B.generators if g[axis] <= level]
    return ShiftInvariantSet(B.m - 1, tuple(kept))


def _build_shell(m: int, n: int) -> np.ndarray:
    if m == 0:
        out = np.zeros((1 if n == 0 else 0, 0), dtype=np.int64)
    elif m == 1:
        out = np.array([[n]], dtype=np.int64)
    else:
        blocks = []
        for first in range(n + 1):
            rest = _shell_small(m - 1, n - first) if m <= 3 else _build_shell(m - 1, n - first)
            head = np.full((len(rest), 1), first, dtype=np.int64)
            blocks.append(np.hstack([head, rest]))
        out = np.vstack(blocks)
    out.setflags(write=False)
    return out


# Memoized for m <= 2 only.
@lru_cache(maxsize=4096)
def _shell_small(m: int, n: int) -> np.ndarray:
    return _build_shell(m, n)


def shell_array(m: int, n: int) -> np.ndarray:
    """All points of degree ``n`` in m variables as an ``(N, m)`` array, lex order."""
    if n < 0:
        return np.zeros((0, m), dtype=np.int64)
    if m <= 2:
        return _shell_small(m, n)
    return _build_shell(m, n)


def truncation_array(m: int, max_degree: int) -> np.ndarray:
    """Shells 0..max_degree stacked in order."""
    return np.vstack([shell_array(m, n) for n in range(max_degree + 1)])


def shell(B: Union[ShiftInvariantSet, str], n: int, m: int = None) -> List[MultiIndex]:
    """
    Members of degree ``n`` in lexicographic order.

    Args:
        B: A shift-invariant set, or ``"all"`` for the whole lattice
        n: Degree
        m: Dimension, required when ``B`` is ``"all"``

    Returns:
        List of MultiIndex
    """
    if n < 0:
        raise LatticeError(f"degree must be nonnegative, got {n}")
    if isinstance(B, str):
        if B != "all" or m is None:
            raise LatticeError("use shell('all', n, m=...) for the whole lattice")
        points = shell_array(m, n)
    else:
        points = shell_array(B.m, n)
        points = points[B.contains_array(points)]
    return [MultiIndex(tuple(int(v) for v in row)) for row in points]


def common_zero_coordinates(points: Iterable[Any]) -> List[FrozenSet[int]]:
    """
    Minimal coordinate sets whose vanishing kills every monomial.

    These are the minimal hitting sets of the supports of the exponents.

    Args:
        points: Nonempty finite set of exponents

    Returns:
        Minimal sets of 0-based axes, ordered by size then lexicographically
    """
    pts = [as_multi_index(p) for p in points]
    if not pts:
        raise EmptySetError("common zero set needs at least one monomial")
    m = pts[0].m
    supports = []
    for p in pts:
        _check_same_dim(m, p.m)
        support = frozenset(i for i, e in enumerate(p.entries) if e > 0)
        if not support:
            raise LatticeError("unit monomial has empty zero set")
        supports.append(support)

    found: List[FrozenSet[int]] = []
    for size in range(1, m + 1):
        for combo in combinations(range(m), size):
            candidate = frozenset(combo)
            if any(f <= candidate for f in found):
                continue
            if all(candidate & s for s in supports):
                found.append(candidate)
    return found


def multi_slices(
    m: int,
    max_codim: int,
    level_cap: int,
    min_codim: int = 0,
) -> List[MultiSlice]:
    """Every multi-slice with ``min_codim <= codim <= max_codim`` and levels up to the cap."""
    out = []
    for codim in range(min_codim, min(max_codim, m) + 1):
        for axes in combinations(range(m), codim):
            for levels in product(range(level_cap + 1), repeat=codim):
                out.append(MultiSlice(axes, levels))
    return out
