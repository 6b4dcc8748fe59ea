"""
Submodule package: vector monomial submodules, fibers and filtrations.
"""
from submodule.domain import (
    DEFAULT_RANK_CUTOFF,
    FiberBasis,
    Filtration,
    Generator,
    PatternCache,
    SubmoduleError,
    VectorSubmodule,
)
from submodule.fibers import (
    fiber,
    fiber_dims,
    fiber_projectors,
    filtration_along,
    quotient_fiber,
)
from submodule.sampling import random_submodule

__all__ = [
    "DEFAULT_RANK_CUTOFF",
    "FiberBasis",
    "Filtration",
    "Generator",
    "PatternCache",
    "SubmoduleError",
    "VectorSubmodule",
    "fiber",
    "fiber_dims",
    "fiber_projectors",
    "filtration_along",
    "quotient_fiber",
    "random_submodule",
]
