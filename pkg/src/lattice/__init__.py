"""
Lattice package: multi-indices, shift-invariant sets and regions.
"""
from lattice.domain import (
    CofiniteDifference,
    DimensionMismatchError,
    EmptySetError,
    LatticeError,
    LatticeRegion,
    LatticeSlice,
    MultiIndex,
    MultiSlice,
    ShiftInvariantSet,
    as_multi_index,
    points_to_array,
)
from lattice.combinatorics import (
    closure,
    cofinite_difference,
    common_zero_coordinates,
    corner,
    minimal_generators,
    multi_slices,
    shell,
    shell_array,
    slice_set,
    truncation_array,
)

__all__ = [
    "CofiniteDifference",
    "DimensionMismatchError",
    "EmptySetError",
    "LatticeError",
    "LatticeRegion",
    "LatticeSlice",
    "MultiIndex",
    "MultiSlice",
    "ShiftInvariantSet",
    "as_multi_index",
    "points_to_array",
    "closure",
    "cofinite_difference",
    "common_zero_coordinates",
    "corner",
    "minimal_generators",
    "multi_slices",
    "shell",
    "shell_array",
    "slice_set",
    "truncation_array",
]
