"""
Decomp package: orthogonal block decompositions and their numeric audit.
"""
from decomp.domain import (
    AuditEntry,
    AuditReport,
    Block,
    BlockTree,
    CornerReduction,
    DecompositionError,
    Mechanism,
)
from decomp.reduction import corner_reduce, full_reduction, reduce_axis, split_axis
from decomp.audit import audit

__all__ = [
    "AuditEntry",
    "AuditReport",
    "Block",
    "BlockTree",
    "CornerReduction",
    "DecompositionError",
    "Mechanism",
    "audit",
    "corner_reduce",
    "full_reduction",
    "reduce_axis",
    "split_axis",
]
