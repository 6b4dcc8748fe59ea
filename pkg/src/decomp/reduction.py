"""
Reduction of monomial submodules into orthogonal blocks.

Along each pending axis the submodule splits into a leveled part (every
generator raised to the largest exponent on that axis) and the slices
below that level; once every pending axis is handled the fiber filtration
along the last axis cuts the rest into cone-times-jump-space blocks.
"""
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from lattice import (
    LatticeRegion,
    MultiIndex,
    ShiftInvariantSet,
    as_multi_index,
    cofinite_difference,
)
from submodule import Generator, VectorSubmodule, filtration_along
from decomp.domain import Block, BlockTree, CornerReduction, DecompositionError, Mechanism
from utils.logger import get_logger

logger = get_logger(__name__)


def _as_cone(cone: Union[LatticeRegion, ShiftInvariantSet, MultiIndex, Sequence[int]]) -> LatticeRegion:
    if isinstance(cone, LatticeRegion):
        if cone.is_finite:
            raise DecompositionError("split_axis needs a cone, not a finite set")
        return cone
    if isinstance(cone, ShiftInvariantSet):
        if len(cone.generators) != 1:
            raise DecompositionError("split_axis needs a single-generator cone")
        return LatticeRegion.cone(cone.generators[0])
    return LatticeRegion.cone(as_multi_index(cone))


def split_axis(
    cone: Union[LatticeRegion, ShiftInvariantSet, MultiIndex, Sequence[int]],
    axis: int,
    jump_space: Optional[np.ndarray] = None,
    dim: int = 1,
) -> Tuple[Block, Block]:
    """
    Split a cone into its interior and its face along ``axis``.

    The interior (strictly above the apex on ``axis``) is handled by the
    ambient commutators. The face sits at the apex level; it is an edge
    operator when that level is positive, and a slice of the ambient module
    when it is zero.

    Args:
        cone: Cone, given as a region, a one-generator set or its apex
        axis: 0-based axis
        jump_space: C^k directions carried by the cone
        dim: Dimension of ``jump_space``

    Returns:
        ``(interior, face)`` blocks
    """
    region = _as_cone(cone)
    if axis not in region.free_axes:
        raise DecompositionError(f"axis {axis + 1} is frozen in {region.describe()}")
    level = region.lower[axis]
    interior = Block(
        region=region.with_lower(axis, level + 1),
        mechanism=Mechanism.AMBIENT_RESTRICTION,
        provenance=f"interior z{axis + 1}>{level}",
        dim=dim,
        jump_space=jump_space,
        axis=axis,
    )
    face = Block(
        region=region.with_fixed(axis, level),
        mechanism=Mechanism.EDGE_OPERATOR if level > 0 else Mechanism.AMBIENT_RESTRICTION,
        provenance=f"face z{axis + 1}={level}",
        dim=dim,
        jump_space=jump_space,
        axis=axis,
    )
    return interior, face


def _attach_views(block: Block) -> Block:
    for axis in block.region.free_axes:
        block.views[axis] = split_axis(block.region, axis, block.jump_space, block.dim)
    return block


def corner_reduce(B: ShiftInvariantSet) -> CornerReduction:
    """
    Split a two-variable set into the cone over its corner and the finite defect.

    Args:
        B: Nonempty shift-invariant set in two variables

    Returns:
        CornerReduction; the defect block is tagged finite-dim-defect
    """
    if B.m != 2:
        raise DecompositionError(
            f"corner reduction is the two-variable step (m={B.m}); use reduce_axis instead"
        )
    difference = cofinite_difference(B)
    if not difference.finite:
        raise DecompositionError("cone over the corner differs from the set in infinitely many points")
    cone = _attach_views(
        Block(
            region=LatticeRegion.cone(difference.corner),
            mechanism=Mechanism.CONE_TENSOR,
            provenance=f"cone over corner {difference.corner.entries}",
        )
    )
    defect = Block(
        region=LatticeRegion.finite(2, difference.points),
        mechanism=Mechanism.FINITE_DEFECT,
        provenance="cone minus set",
    )
    logger.info(f"corner {difference.corner.entries}, defect of {len(difference.points)} point(s)")
    return CornerReduction(
        corner=difference.corner,
        cone=cone,
        defect=defect,
        defect_points=difference.points,
    )


def _region(m: int, fixed: Dict[int, int], lower: Dict[int, int]) -> LatticeRegion:
    return LatticeRegion.slab(m, fixed=dict(fixed), lower=dict(lower))


def _tensor_blocks(
    S: VectorSubmodule,
    fixed: Dict[int, int],
    lower: Dict[int, int],
    moving_axis: int,
    provenance: str,
) -> List[Block]:
    filtration = filtration_along(S, fixed, moving_axis)
    blocks = []
    for level, jump in zip(filtration.breakpoints, filtration.jump_spaces):
        bounds = dict(lower)
        bounds[moving_axis] = max(bounds.get(moving_axis, 0), level)
        block = Block(
            region=_region(S.m, fixed, bounds),
            mechanism=Mechanism.CONE_TENSOR,
            provenance=f"{provenance}/filtration z{moving_axis + 1}>={level}",
            dim=int(jump.shape[1]),
            jump_space=jump,
        )
        blocks.append(_attach_views(block))
    return blocks


def _leveled(S: VectorSubmodule, axis: int, level: int) -> VectorSubmodule:
    gens = []
    for g in S.generators:
        entries = list(g.alpha.entries)
        entries[axis] = level
        gens.append(Generator(MultiIndex(tuple(entries)), g.x))
    return S.with_generators(gens)


def _split(
    S: VectorSubmodule,
    axis: int,
    fixed: Dict[int, int],
    lower: Dict[int, int],
    provenance: str,
) -> Tuple[Block, Dict[int, int], List[Tuple[Block, Dict[int, int], Dict[int, int]]]]:
    """One reduction step: the leveled block, its lower bounds and the nonempty slices below its level."""
    top = int(S.alpha_array()[:, axis].max())
    lev_lower = dict(lower)
    lev_lower[axis] = top
    leveled = Block(
        region=_region(S.m, fixed, lev_lower),
        mechanism=Mechanism.LEVELED,
        provenance=f"{provenance}/level z{axis + 1}>={top}",
        submodule=_leveled(S, axis, top),
        axis=axis,
    )
    slices = []
    for gamma in range(top):
        gens = [g for g in S.generators if g.alpha.entries[axis] <= gamma]
        if not gens:
            continue
        slice_fixed = dict(fixed)
        slice_fixed[axis] = gamma
        slice_lower = {a: v for a, v in lower.items() if a != axis}
        block = Block(
            region=_region(S.m, slice_fixed, slice_lower),
            mechanism=Mechanism.INDUCTION,
            provenance=f"{provenance}/slice z{axis + 1}={gamma}",
            submodule=S.with_generators(gens),
            axis=axis,
        )
        slices.append((block, slice_fixed, slice_lower))
    return leveled, lev_lower, slices


def _reduce(
    S: VectorSubmodule,
    pending: Sequence[int],
    last: int,
    fixed: Dict[int, int],
    lower: Dict[int, int],
    provenance: str,
) -> List[Block]:
    if not pending:
        return _tensor_blocks(S, fixed, lower, last, provenance)
    axis, rest = pending[0], pending[1:]
    leveled, lev_lower, slices = _split(S, axis, fixed, lower, provenance)
    leveled.children = _reduce(leveled.submodule, rest, last, fixed, lev_lower, leveled.provenance)
    children = [leveled]
    for block, slice_fixed, slice_lower in slices:
        block.children = _reduce(block.submodule, rest, last, slice_fixed, slice_lower, block.provenance)
        children.append(block)
    return children


def _check_axis(S: VectorSubmodule, axis: int):
    if not 0 <= axis < S.m:
        raise DecompositionError(f"axis {axis + 1} out of range for m={S.m}")


def reduce_axis(S: VectorSubmodule, axis: int) -> BlockTree:
    """
    One reduction step along ``axis``.

    Child 0 is the leveled submodule (every generator raised to the largest
    exponent on ``axis``); the others are the slices ``z_axis = gamma``
    below that level. A slice with one free coordinate left is cut by its
    fiber filtration right away.

    Args:
        S: Nonempty vector submodule
        axis: 0-based axis

    Returns:
        BlockTree of depth one or two
    """
    _check_axis(S, axis)
    if S.is_empty:
        raise DecompositionError("cannot reduce the zero submodule")
    leveled, _, slices = _split(S, axis, {}, {}, "root")
    children = [leveled]
    for block, slice_fixed, slice_lower in slices:
        free = block.region.free_axes
        if len(free) == 1:
            block.children = _tensor_blocks(block.submodule, slice_fixed, slice_lower, free[0], block.provenance)
        children.append(block)
    root = Block(region=None, mechanism=Mechanism.ROOT, provenance="root", dim=S.k, children=children, submodule=S)
    logger.info(f"reduced along z{axis + 1}: {len(slices)} slice(s) below level {leveled.region.lower[axis]}")
    return BlockTree(root=root, submodule=S, axis_order=(axis,))


def full_reduction(S: VectorSubmodule, axis_order: Optional[Sequence[int]] = None) -> BlockTree:
    """
    Reduce a submodule until every leaf is a cone-times-jump-space block.

    Args:
        S: Vector submodule (the zero submodule gives an empty tree)
        axis_order: Permutation of the axes; all but the last are leveled or
            sliced in turn and the last one carries the fiber filtration

    Returns:
        BlockTree
    """
    order = tuple(range(S.m)) if axis_order is None else tuple(int(a) for a in axis_order)
    if sorted(order) != list(range(S.m)):
        raise DecompositionError(f"axis order {[a + 1 for a in order]} is not a permutation of 1..{S.m}")
    root = Block(region=None, mechanism=Mechanism.ROOT, provenance="root", dim=S.k, submodule=S)
    if S.is_empty:
        return BlockTree(root=root, submodule=S, axis_order=order)
    root.children = _reduce(S, order[:-1], order[-1], {}, {}, "root")
    tree = BlockTree(root=root, submodule=S, axis_order=order)
    logger.info(f"full reduction: {len(tree.leaves())} leaves, depth {tree.depth()}")
    return tree
