"""
Domain models for the orthogonal block decomposition of a monomial submodule.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from lattice import LatticeRegion, MultiIndex, as_multi_index
from submodule import VectorSubmodule
from utils.errors import EssnormError


class DecompositionError(EssnormError):
    """Raised when a reduction step receives input it cannot handle."""


class Mechanism(str, Enum):
    """Why a block's commutators are compact."""
    ROOT = "root"
    LEVELED = "leveled"
    INDUCTION = "induction(m−1)"
    AMBIENT_RESTRICTION = "ambient-restriction"
    EDGE_OPERATOR = "edge-operator"
    FINITE_DEFECT = "finite-dim-defect"
    CONE_TENSOR = "corollary6-tensor"


def _encode_matrix(matrix: np.ndarray) -> List[List[Any]]:
    """Columns of a basis, complex entries as ``[re, im]``."""
    out = []
    for column in matrix.T:
        if np.iscomplexobj(column):
            out.append([[float(v.real), float(v.imag)] for v in column])
        else:
            out.append([float(v) for v in column])
    return out


@dataclass
class Block:
    """
    One node of a BlockTree.

    ``region`` is the lattice set the block lives on; ``dim`` is the number
    of C^k directions it carries at each of its points (the jump-space
    dimension for tensor blocks). ``views`` holds, per axis, the split of a
    leaf into its interior and face along that axis.
    """
    region: Optional[LatticeRegion]
    mechanism: Mechanism
    provenance: str
    dim: int = 1
    children: List["Block"] = field(default_factory=list)
    jump_space: Optional[np.ndarray] = field(default=None, repr=False)
    submodule: Optional[VectorSubmodule] = field(default=None, repr=False)
    axis: Optional[int] = None
    views: Dict[int, Tuple["Block", "Block"]] = field(default_factory=dict)

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def walk(self) -> Iterator["Block"]:
        """Pre-order traversal."""
        yield self
        for child in self.children:
            yield from child.walk()

    def contains(self, beta: Any) -> bool:
        return self.region is not None and self.region.contains(beta)

    def sliced_submodule(self) -> Optional[VectorSubmodule]:
        """The submodule in the coordinates left free by the block's frozen axes."""
        if self.submodule is None or self.region is None:
            return None
        frozen = self.region.fixed_axes
        if not frozen:
            return self.submodule
        keep = [a for a in range(self.submodule.m) if a not in frozen]
        pairs = [
            (tuple(g.alpha.entries[a] for a in keep), g.x)
            for g in self.submodule.generators
        ]
        return VectorSubmodule.from_pairs(len(keep), self.submodule.k, pairs, self.submodule.rank_cutoff)

    def label(self) -> str:
        region = self.region.describe() if self.region is not None else "-"
        return f"{self.mechanism.value} {region}"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "mechanism": self.mechanism.value,
            "provenance": self.provenance,
            "region": self.region.to_dict() if self.region is not None else None,
            "dim": self.dim,
        }
        if self.axis is not None:
            data["axis"] = self.axis + 1
        if self.jump_space is not None:
            data["jump_space"] = _encode_matrix(self.jump_space)
        sliced = self.sliced_submodule() if self.mechanism is Mechanism.INDUCTION else None
        if sliced is not None:
            data["submodule"] = sliced.to_dict()
        if self.views:
            data["views"] = {
                str(axis + 1): {
                    "interior": {
                        "mechanism": interior.mechanism.value,
                        "region": interior.region.to_dict(),
                    },
                    "face": {
                        "mechanism": face.mechanism.value,
                        "region": face.region.to_dict(),
                    },
                }
                for axis, (interior, face) in sorted(self.views.items())
            }
        if self.children:
            data["children"] = [child.to_dict() for child in self.children]
        return data


@dataclass
class BlockTree:
    """
    The reduction of a submodule into orthogonal blocks.

    Leaves partition the support of the submodule; tensor leaves over the
    same points carry complementary jump spaces, so their dimensions add up
    to the fiber dimension.
    """
    root: Block
    submodule: VectorSubmodule
    axis_order: Tuple[int, ...] = ()

    def blocks(self) -> List[Block]:
        return list(self.root.walk())

    def leaves(self) -> List[Block]:
        if self.root.is_leaf:
            return []
        return [b for b in self.root.walk() if b.is_leaf]

    def pieces(self) -> List[Block]:
        """Every interior and face of every leaf, plus leaves without views."""
        out: List[Block] = []
        for leaf in self.leaves():
            if not leaf.views:
                out.append(leaf)
                continue
            for axis in sorted(leaf.views):
                out.extend(leaf.views[axis])
        return out

    def leaves_for_axis(self, axis: int) -> List[Block]:
        """Leaves with each one replaced by its interior and face along ``axis``."""
        out: List[Block] = []
        for leaf in self.leaves():
            if axis in leaf.views:
                out.extend(leaf.views[axis])
            else:
                out.append(leaf)
        return out

    def claiming_leaves(self, beta: Any) -> List[Block]:
        beta = as_multi_index(beta)
        return [leaf for leaf in self.leaves() if leaf.contains(beta)]

    def claimed_dimension(self, beta: Any) -> int:
        """Sum of leaf dimensions over the leaves containing ``beta``."""
        return sum(leaf.dim for leaf in self.claiming_leaves(beta))

    def depth(self) -> int:
        def measure(block: Block) -> int:
            return 1 + max((measure(c) for c in block.children), default=0)

        return measure(self.root) - 1

    def mechanism_counts(self) -> Dict[str, int]:
        counts: Dict[str, int] = {}
        for piece in self.pieces():
            counts[piece.mechanism.value] = counts.get(piece.mechanism.value, 0) + 1
        return dict(sorted(counts.items()))

    def to_dict(self) -> Dict[str, Any]:
        return {
            "submodule": self.submodule.to_dict(),
            "axis_order": [a + 1 for a in self.axis_order],
            "depth": self.depth(),
            "leaf_count": len(self.leaves()),
            "mechanisms": self.mechanism_counts(),
            "root": self.root.to_dict(),
        }

    def render_text(self) -> str:
        """Indented outline, one block per line, views listed under their leaf."""
        lines: List[str] = []

        def render(block: Block, indent: int):
            pad = "  " * indent
            extra = f" dim={block.dim}" if block.mechanism is Mechanism.CONE_TENSOR else ""
            lines.append(f"{pad}{block.label()}{extra} [{block.provenance}]")
            for axis, (interior, face) in sorted(block.views.items()):
                lines.append(
                    f"{pad}  z{axis + 1}: {interior.label()} | {face.label()}"
                )
            for child in block.children:
                render(child, indent + 1)

        render(self.root, 0)
        return "\n".join(lines) + "\n"


@dataclass
class CornerReduction:
    """A two-variable set split into the cone over its corner and the finite defect."""
    corner: MultiIndex
    cone: Block
    defect: Block
    defect_points: Tuple[MultiIndex, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "corner": self.corner.to_list(),
            "defect": [p.to_list() for p in self.defect_points],
            "cone": self.cone.to_dict(),
            "defect_block": self.defect.to_dict(),
        }


@dataclass
class AuditEntry:
    """Verdict for one operator the audit evaluated."""
    block: str
    mechanism: str
    operator: str
    verdict: str
    slope: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "block": self.block,
            "mechanism": self.mechanism,
            "operator": self.operator,
            "verdict": self.verdict,
            "slope": self.slope,
            "notes": list(self.notes),
        }


@dataclass
class AuditReport:
    """Per-block verdicts and the aggregate verdict for all ``[Y_i*, Y_j]``."""
    verdict: str
    p: float
    max_degree: int
    entries: List[AuditEntry] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "p": self.p,
            "max_degree": self.max_degree,
            "entries": [e.to_dict() for e in self.entries],
        }
