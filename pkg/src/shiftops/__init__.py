"""
Shiftops package: displacement-homogeneous lattice operators.
"""
from shiftops.domain import (
    AmbientDomain,
    BlockSplit,
    LatticeOperator,
    ModuleDomain,
    OperatorError,
    QuotientDomain,
    RestrictedDomain,
    SubmoduleDomain,
)
from shiftops.operators import (
    DOMAIN_KINDS,
    adjoint_coefficient,
    ambient_index,
    apply,
    commutator,
    cross_commutator,
    edge_operator_gram,
    materialize,
    module_domain,
    restrict,
    self_commutator,
    shift_op,
)
from shiftops.blocks import block_split

__all__ = [
    "AmbientDomain",
    "BlockSplit",
    "LatticeOperator",
    "ModuleDomain",
    "OperatorError",
    "QuotientDomain",
    "RestrictedDomain",
    "SubmoduleDomain",
    "DOMAIN_KINDS",
    "adjoint_coefficient",
    "ambient_index",
    "apply",
    "block_split",
    "commutator",
    "cross_commutator",
    "edge_operator_gram",
    "materialize",
    "module_domain",
    "restrict",
    "self_commutator",
    "shift_op",
]
