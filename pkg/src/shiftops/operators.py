"""
Closed-form lattice operators.

Shifts ``Z_i`` and their restrictions and compressions, adjoints,
self- and cross-commutators, edge-operator Grams, region restrictions,
point-by-point application and dense materialization.
"""
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from lattice import LatticeRegion, LatticeSlice, MultiSlice, truncation_array
from submodule import VectorSubmodule
from shiftops.domain import (
    AmbientDomain,
    LatticeOperator,
    ModuleDomain,
    OperatorError,
    QuotientDomain,
    RestrictedDomain,
    SubmoduleDomain,
    valid_mask,
)
from weights import WeightSet

DOMAIN_KINDS = ("ambient", "submodule", "quotient")


def module_domain(
    kind: str,
    m: int,
    submodule: Optional[VectorSubmodule] = None,
    k: int = 1,
) -> ModuleDomain:
    """
    Build a domain by name.

    Args:
        kind: One of ``ambient``, ``submodule``, ``quotient``
        m: Number of variables
        submodule: Required for ``submodule`` and ``quotient``
        k: Multiplicity of the ambient module (ignored when a submodule is given)

    Returns:
        ModuleDomain
    """
    if kind == "ambient":
        if submodule is not None:
            return AmbientDomain(m, submodule.k, submodule.dtype)
        return AmbientDomain(m, k)
    if submodule is None:
        raise OperatorError(f"{kind} domain needs a submodule")
    if submodule.m != m:
        raise OperatorError(f"submodule has {submodule.m} variables, expected {m}")
    if kind == "submodule":
        return SubmoduleDomain(submodule)
    if kind == "quotient":
        return QuotientDomain(submodule)
    raise OperatorError(f"unknown domain {kind!r}; expected one of {DOMAIN_KINDS}")


def _unit(m: int, axis: int) -> np.ndarray:
    e = np.zeros(m, dtype=np.int64)
    e[axis] = 1
    return e


def _ratios(W: WeightSet, axis: int, points: np.ndarray) -> np.ndarray:
    """Step ratios, zero at points off the lattice."""
    out = np.zeros(len(points))
    valid = valid_mask(points)
    if valid.any():
        out[valid] = W.ratio_array(axis, points[valid])
    return out


def shift_op(W: WeightSet, axis: int, domain: Optional[ModuleDomain] = None) -> LatticeOperator:
    """
    Multiplication by ``z_axis`` on a module.

    The block at beta is ``Q(beta + e_i) w_i(beta) Q(beta)`` with Q the
    fiber projector: the ambient shift, its restriction to a submodule, or
    its compression to a quotient.

    Args:
        W: Weight set
        axis: 0-based coordinate
        domain: Module (defaults to the scalar ambient module)

    Returns:
        LatticeOperator with displacement ``e_axis``
    """
    if domain is None:
        domain = AmbientDomain(W.m, 1)
    if domain.m != W.m:
        raise OperatorError(f"weights have {W.m} variables, domain has {domain.m}")
    if not 0 <= axis < W.m:
        raise OperatorError(f"axis {axis} out of range for m={W.m}")
    e = _unit(W.m, axis)

    def blocks_fn(points: np.ndarray) -> np.ndarray:
        w = _ratios(W, axis, points)
        src = domain.projectors(points)
        dst = domain.projectors(points + e)
        return dst @ (w[:, None, None] * src)

    return LatticeOperator(
        displacement=tuple(int(v) for v in e),
        domain=domain,
        blocks_fn=blocks_fn,
        kind="shift",
        axes=(axis,),
        label=f"Z{axis + 1}",
    )


def adjoint_coefficient(op: LatticeOperator, beta: Any) -> np.ndarray:
    """Block of the adjoint at ``beta``: the conjugate transpose of ``K(beta - delta)``."""
    return op.adjoint().coefficient(beta)


def commutator(a: LatticeOperator, b: LatticeOperator) -> LatticeOperator:
    """
    The commutator ``[a^*, b] = a^* b - b a^*``.

    Block at beta: ``Ka(beta + db - da)^H Kb(beta) - Kb(beta - da) Ka(beta - da)^H``.
    """
    if a.domain is not b.domain:
        raise OperatorError("commutator operands must share a domain")
    da, db = a.delta, b.delta

    def blocks_fn(points: np.ndarray) -> np.ndarray:
        first = np.conj(np.swapaxes(a.blocks(points + db - da), 1, 2)) @ b.blocks(points)
        back = points - da
        second = b.blocks(back) @ np.conj(np.swapaxes(a.blocks(back), 1, 2))
        return first - second

    return LatticeOperator(
        displacement=tuple(int(v) for v in db - da),
        domain=a.domain,
        blocks_fn=blocks_fn,
        kind="commutator",
        axes=a.axes + b.axes,
        label=f"[{a.label}*,{b.label}]",
    )


def self_commutator(op: LatticeOperator) -> LatticeOperator:
    """``[T^*, T]`` for an operator whose displacement is a unit vector."""
    delta = op.delta
    if not (np.count_nonzero(delta) == 1 and delta.sum() == 1):
        raise OperatorError(f"self-commutator needs a unit displacement, got {op.displacement}")
    result = commutator(op, op)
    return LatticeOperator(
        displacement=result.displacement,
        domain=result.domain,
        blocks_fn=result.blocks_fn,
        kind="self_commutator",
        axes=op.axes,
        label=result.label,
    )


def cross_commutator(
    W: WeightSet,
    i: int,
    j: int,
    domain: Optional[ModuleDomain] = None,
) -> LatticeOperator:
    """
    ``[Z_i^*, Z_j]`` on a module, with displacement ``e_j - e_i``.

    ``i == j`` delegates to the self-commutator.
    """
    if domain is None:
        domain = AmbientDomain(W.m, 1)
    zi = shift_op(W, i, domain)
    if i == j:
        return self_commutator(zi)
    result = commutator(zi, shift_op(W, j, domain))
    return LatticeOperator(
        displacement=result.displacement,
        domain=domain,
        blocks_fn=result.blocks_fn,
        kind="cross_commutator",
        axes=(i, j),
        label=result.label,
    )


def _as_region(m: int, where: Union[LatticeRegion, LatticeSlice, MultiSlice]) -> LatticeRegion:
    if isinstance(where, LatticeRegion):
        return where
    if isinstance(where, (LatticeSlice, MultiSlice)):
        return where.region(m)
    raise OperatorError(f"cannot build a region from {where!r}")


def restrict(
    op: LatticeOperator,
    where: Union[LatticeRegion, LatticeSlice, MultiSlice],
    subspace: Optional[np.ndarray] = None,
) -> LatticeOperator:
    """
    Compress an operator to a region (and optionally to a subspace of C^k).

    Args:
        op: Operator to compress
        where: Region, slice or multi-slice
        subspace: Orthonormal columns spanning a subspace of every fiber in the region

    Returns:
        LatticeOperator on a RestrictedDomain
    """
    region = _as_region(op.m, where)
    domain = RestrictedDomain(op.domain, region, subspace)
    delta = op.delta

    def blocks_fn(points: np.ndarray) -> np.ndarray:
        src = domain.projectors(points)
        dst = domain.projectors(points + delta)
        return dst @ op.blocks(points) @ src

    return LatticeOperator(
        displacement=op.displacement,
        domain=domain,
        blocks_fn=blocks_fn,
        kind=op.kind,
        axes=op.axes,
        label=f"{op.label}|{region.describe()}",
    )


def edge_operator_gram(
    W: WeightSet,
    axis: int,
    where: Union[LatticeRegion, LatticeSlice, MultiSlice],
    domain: Optional[ModuleDomain] = None,
) -> LatticeOperator:
    """
    Gram ``X^* X`` of the edge map induced by ``Z_axis`` from a slice into the module.

    Diagonal with block ``K(beta)^H K(beta)`` on the slice, which is
    ``w_axis(beta)^2`` for the scalar ambient module.

    Args:
        W: Weight set
        axis: Axis of the edge map (0-based)
        where: Slice, multi-slice or region the edge map starts from
        domain: Module (defaults to the scalar ambient module)

    Returns:
        Diagonal LatticeOperator on the restricted domain
    """
    if domain is None:
        domain = AmbientDomain(W.m, 1)
    shift = shift_op(W, axis, domain)
    region = _as_region(W.m, where)
    restricted = RestrictedDomain(domain, region)

    def blocks_fn(points: np.ndarray) -> np.ndarray:
        k_blocks = shift.blocks(points)
        gram = np.conj(np.swapaxes(k_blocks, 1, 2)) @ k_blocks
        mask = restricted.projectors(points)
        return mask @ gram @ mask

    return LatticeOperator(
        displacement=(0,) * W.m,
        domain=restricted,
        blocks_fn=blocks_fn,
        kind="edge_gram",
        axes=(axis,),
        label=f"X{axis + 1}*X{axis + 1}|{region.describe()}",
    )


def apply(op: LatticeOperator, vector: Dict[Tuple[int, ...], Any]) -> Dict[Tuple[int, ...], np.ndarray]:
    """
    Apply an operator to a finitely supported coefficient vector.

    Args:
        op: Lattice operator
        vector: Mapping point -> coefficient in C^k (scalars allowed for k = 1)

    Returns:
        Mapping target point -> coefficient in C^k, ordered by (degree, lex)
    """
    if not vector:
        return {}
    points = sorted(tuple(int(v) for v in p) for p in vector)
    arr = np.array(points, dtype=np.int64).reshape(-1, op.m)
    if (arr < 0).any():
        raise OperatorError("vector support must lie in the nonnegative lattice")
    coeffs = np.array(
        [np.atleast_1d(np.asarray(vector[p])).reshape(op.k) for p in points]
    )
    images = np.einsum("nij,nj->ni", op.blocks(arr), coeffs)
    targets = arr + op.delta
    out: Dict[Tuple[int, ...], np.ndarray] = {}
    for target, image in zip(targets, images):
        if (target < 0).any():
            continue
        key = tuple(int(v) for v in target)
        out[key] = out[key] + image if key in out else image.copy()
    return dict(sorted(out.items(), key=lambda item: (sum(item[0]), item[0])))


def ambient_index(m: int, max_degree: int) -> Tuple[np.ndarray, Dict[Tuple[int, ...], int]]:
    """Points of degree <= max_degree in (degree, lex) order and their positions."""
    points = truncation_array(m, max_degree)
    index = {tuple(int(v) for v in p): row for row, p in enumerate(points)}
    return points, index


def materialize(op: LatticeOperator, max_degree: int) -> np.ndarray:
    """
    Dense matrix of ``op`` on the degree-truncated ambient space.

    Basis vectors are ``(beta, c)`` with ``|beta| <= max_degree`` in
    (degree, lex) order and c the C^k coordinate innermost. Images that
    leave the truncation are dropped.
    """
    points, index = ambient_index(op.m, max_degree)
    k = op.k
    blocks = op.blocks(points)
    matrix = np.zeros((len(points) * k, len(points) * k), dtype=blocks.dtype)
    targets = points + op.delta
    for col, (target, block) in enumerate(zip(targets, blocks)):
        row = index.get(tuple(int(v) for v in target))
        if row is None:
            continue
        matrix[row * k:(row + 1) * k, col * k:(col + 1) * k] = block
    return matrix
