"""
Weights package: weight families, step ratios and condition sweeps.
"""
from weights.families import (
    BUILTIN_FAMILIES,
    WeightError,
    WeightFamily,
    WeightUndefinedError,
)
from weights.domain import StepRatio, WeightSet
from weights.checks import ConditionVerdict, check_contractive, check_spherical

__all__ = [
    "BUILTIN_FAMILIES",
    "WeightError",
    "WeightFamily",
    "WeightUndefinedError",
    "StepRatio",
    "WeightSet",
    "ConditionVerdict",
    "check_contractive",
    "check_spherical",
]
