"""
Fiber subspaces of vector submodules.

Fibers are memoized per activation pattern (which generators are active at
a point), so a whole shell reuses a handful of orthonormal bases.
"""
from typing import Dict, Optional, Tuple

import numpy as np

from lattice import MultiIndex, as_multi_index
from submodule.domain import (
    FiberBasis,
    Filtration,
    SubmoduleError,
    VectorSubmodule,
    frozen_pairs,
)
from utils.logger import get_logger

logger = get_logger(__name__)


def _split_basis(S: VectorSubmodule, pattern: Tuple[bool, ...]) -> Tuple[np.ndarray, np.ndarray]:
    """Orthonormal bases (as columns) of the span of the active vectors and of its complement."""
    rows = S.vector_array()[np.array(pattern, dtype=bool)] if pattern else S.vector_array()[:0]
    eye = np.eye(S.k, dtype=S.dtype)
    if len(rows) == 0:
        return eye[:, :0], eye
    _, sigma, vh = np.linalg.svd(rows, full_matrices=True)
    rank = int(np.sum(sigma > S.rank_cutoff))
    # row space of ``rows`` is spanned by the leading rows of vh
    return vh[:rank].T.copy(), vh[rank:].T.copy()


def _pattern_entry(S: VectorSubmodule, pattern: Tuple[bool, ...]) -> Dict[str, np.ndarray]:
    def compute():
        basis, complement = _split_basis(S, pattern)
        return {
            "basis": basis,
            "complement": complement,
            "projector": basis @ basis.conj().T,
        }

    return S.cache.get_or_compute(pattern, compute)


def fiber(S: VectorSubmodule, beta) -> FiberBasis:
    """
    Orthonormal basis of ``H_beta = span{x_i : alpha_i <= beta}``.

    Args:
        S: Vector submodule
        beta: Lattice point

    Returns:
        FiberBasis (dimension 0 when no generator is active)
    """
    beta = as_multi_index(beta)
    if beta.m != S.m:
        raise SubmoduleError(f"point {beta.entries} does not have {S.m} coordinates")
    pattern = tuple(bool(v) for v in S.activation(np.array([beta.entries]))[0])
    return FiberBasis(beta, _pattern_entry(S, pattern)["basis"])


def quotient_fiber(S: VectorSubmodule, beta) -> FiberBasis:
    """Orthonormal basis of the orthogonal complement of ``H_beta`` in C^k."""
    beta = as_multi_index(beta)
    if beta.m != S.m:
        raise SubmoduleError(f"point {beta.entries} does not have {S.m} coordinates")
    pattern = tuple(bool(v) for v in S.activation(np.array([beta.entries]))[0])
    return FiberBasis(beta, _pattern_entry(S, pattern)["complement"])


def _grouped(S: VectorSubmodule, points: np.ndarray):
    act = S.activation(points)
    if act.shape[1] == 0 or len(act) == 0:
        return [tuple()] if len(act) else [], np.zeros(len(act), dtype=np.int64)
    patterns, inverse = np.unique(act, axis=0, return_inverse=True)
    keys = [tuple(bool(v) for v in row) for row in patterns]
    return keys, inverse.reshape(-1)


def fiber_projectors(S: VectorSubmodule, points: np.ndarray) -> np.ndarray:
    """``(N, k, k)`` orthogonal projectors onto the fibers at ``points``."""
    points = np.asarray(points, dtype=np.int64).reshape(-1, S.m)
    if len(points) == 0:
        return np.zeros((0, S.k, S.k), dtype=S.dtype)
    keys, inverse = _grouped(S, points)
    table = np.stack([_pattern_entry(S, key)["projector"] for key in keys])
    return table[inverse]


def fiber_dims(S: VectorSubmodule, points: np.ndarray) -> np.ndarray:
    """Fiber dimension at each point, as an int array."""
    points = np.asarray(points, dtype=np.int64).reshape(-1, S.m)
    if len(points) == 0:
        return np.zeros(0, dtype=np.int64)
    keys, inverse = _grouped(S, points)
    table = np.array([_pattern_entry(S, key)["basis"].shape[1] for key in keys], dtype=np.int64)
    return table[inverse]


def filtration_along(
    S: VectorSubmodule,
    frozen: Optional[Dict[int, int]],
    moving_axis: int,
) -> Filtration:
    """
    Sweep the moving coordinate and record where the fiber grows.

    Axes that are neither frozen nor moving are saturated: their generator
    constraints are treated as satisfied.

    Args:
        S: Vector submodule
        frozen: Mapping axis -> level for the frozen coordinates
        moving_axis: Axis that sweeps 0, 1, 2, ...

    Returns:
        Filtration with minimal breakpoints and orthonormal jump spaces
    """
    pairs = frozen_pairs(frozen)
    if not 0 <= moving_axis < S.m:
        raise SubmoduleError(f"moving axis {moving_axis} out of range for m={S.m}")
    if any(a == moving_axis for a, _ in pairs):
        raise SubmoduleError("moving axis cannot be frozen")

    alphas = S.alpha_array()
    contributing = np.ones(len(alphas), dtype=bool)
    for axis, level in pairs:
        contributing &= alphas[:, axis] <= level
    vectors = S.vector_array()
    moving = alphas[:, moving_axis]
    top = int(moving[contributing].max()) if contributing.any() else 0

    eye = np.eye(S.k, dtype=S.dtype)
    previous = eye[:, :0]
    breakpoints, dims, jumps = [], [], []
    for level in range(top + 1):
        active = contributing & (moving <= level)
        if not active.any():
            continue
        _, sigma, vh = np.linalg.svd(vectors[active], full_matrices=False)
        rank = int(np.sum(sigma > S.rank_cutoff))
        if rank <= previous.shape[1]:
            continue
        current = vh[:rank].T
        residual = current - previous @ (previous.conj().T @ current)
        u, s, _ = np.linalg.svd(residual, full_matrices=False)
        jump = u[:, : int(np.sum(s > S.rank_cutoff))].copy()
        breakpoints.append(level)
        dims.append(rank)
        jumps.append(jump)
        previous = np.hstack([previous, jump])
        logger.debug(f"filtration along axis {moving_axis}: level {level} -> dim {rank}")

    return Filtration(
        frozen=pairs,
        moving_axis=moving_axis,
        breakpoints=tuple(breakpoints),
        dims=tuple(dims),
        jump_spaces=tuple(jumps),
    )
