"""
Domain models for lattice operators.

Every operator is displacement-homogeneous: it sends the fiber over beta to
the fiber over ``beta + displacement`` through a k x k block. Blocks are
stored in ambient coordinates of C^k (already compressed to the module's
fibers); frame coordinates are available on demand.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Optional, Tuple

import numpy as np

from lattice import LatticeRegion, MultiIndex, as_multi_index, shell_array
from submodule import VectorSubmodule, fiber, fiber_dims, fiber_projectors, quotient_fiber
from utils.errors import EssnormError


class OperatorError(EssnormError):
    """Raised for invalid operator construction or application."""


def valid_mask(points: np.ndarray) -> np.ndarray:
    """Rows that lie in the nonnegative lattice."""
    return np.all(points >= 0, axis=1)


class ModuleDomain(ABC):
    """
    Abstract base class for the module an operator acts on.

    A domain assigns to every lattice point a fiber inside C^k; points off
    the nonnegative lattice always have the zero fiber.
    """

    kind: str = ""

    def __init__(self, m: int, k: int, dtype=np.float64):
        self.m = m
        self.k = k
        self.dtype = dtype

    @abstractmethod
    def projectors(self, points: np.ndarray) -> np.ndarray:
        """
        Orthogonal projectors onto the fibers.

        Args:
            points: ``(N, m)`` int array (may contain negative entries)

        Returns:
            ``(N, k, k)`` array, zero blocks off the domain
        """
        pass

    @abstractmethod
    def dims(self, points: np.ndarray) -> np.ndarray:
        """Fiber dimensions as an ``(N,)`` int array."""
        pass

    @abstractmethod
    def frame(self, beta: MultiIndex) -> np.ndarray:
        """Orthonormal basis of the fiber over ``beta`` as a ``(k, d)`` array."""
        pass

    def shell_points(self, n: int) -> np.ndarray:
        """Candidate source points of degree ``n``."""
        return shell_array(self.m, n)

    def describe(self) -> Dict[str, Any]:
        return {"kind": self.kind, "m": self.m, "k": self.k}


class AmbientDomain(ModuleDomain):
    """The whole module tensored with C^k."""

    kind = "ambient"

    def projectors(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        eye = np.eye(self.k, dtype=self.dtype)
        return valid_mask(points)[:, None, None] * eye[None, :, :]

    def dims(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        return valid_mask(points).astype(np.int64) * self.k

    def frame(self, beta: MultiIndex) -> np.ndarray:
        return np.eye(self.k, dtype=self.dtype)


class SubmoduleDomain(ModuleDomain):
    """A monomial submodule: fiber ``H_beta`` over beta."""

    kind = "submodule"

    def __init__(self, submodule: VectorSubmodule):
        super().__init__(submodule.m, submodule.k, submodule.dtype)
        self.submodule = submodule

    def projectors(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        valid = valid_mask(points)
        out = np.zeros((len(points), self.k, self.k), dtype=self.dtype)
        if valid.any():
            out[valid] = fiber_projectors(self.submodule, points[valid])
        return out

    def dims(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        valid = valid_mask(points)
        out = np.zeros(len(points), dtype=np.int64)
        if valid.any():
            out[valid] = fiber_dims(self.submodule, points[valid])
        return out

    def frame(self, beta: MultiIndex) -> np.ndarray:
        return fiber(self.submodule, beta).basis

    def describe(self) -> Dict[str, Any]:
        data = super().describe()
        data["submodule"] = self.submodule.to_dict()
        return data


class QuotientDomain(SubmoduleDomain):
    """The quotient by a submodule, realized as its orthogonal complement."""

    kind = "quotient"

    def projectors(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        eye = np.eye(self.k, dtype=self.dtype)
        valid = valid_mask(points)[:, None, None]
        return valid * (eye[None, :, :] - super().projectors(points))

    def dims(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        return valid_mask(points).astype(np.int64) * self.k - super().dims(points)

    def frame(self, beta: MultiIndex) -> np.ndarray:
        return quotient_fiber(self.submodule, beta).basis


class RestrictedDomain(ModuleDomain):
    """
    A base domain cut down to a lattice region.

    With ``subspace`` (orthonormal columns J) the fiber becomes the
    compression ``P_J Q P_J``; callers pass subspaces contained in every
    base fiber of the region, so it stays a projector.
    """

    kind = "restricted"

    def __init__(
        self,
        base: ModuleDomain,
        region: LatticeRegion,
        subspace: Optional[np.ndarray] = None,
    ):
        dtype = base.dtype
        if subspace is not None and np.iscomplexobj(subspace):
            dtype = np.complex128
        super().__init__(base.m, base.k, dtype)
        if region.m != base.m:
            raise OperatorError(f"region has {region.m} coordinates, domain has {base.m}")
        self.base = base
        self.region = region
        self.subspace = None
        self._subspace_projector = None
        if subspace is not None:
            subspace = np.asarray(subspace).reshape(base.k, -1)
            self.subspace = subspace
            self._subspace_projector = subspace @ subspace.conj().T

    def projectors(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        inside = self.region.contains_array(points)
        out = self.base.projectors(points).astype(self.dtype) * inside[:, None, None]
        if self._subspace_projector is not None:
            pj = self._subspace_projector
            out = pj[None, :, :] @ out @ pj[None, :, :]
        return out

    def dims(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        if self._subspace_projector is None:
            inside = self.region.contains_array(points)
            return self.base.dims(points) * inside
        traces = np.trace(self.projectors(points), axis1=1, axis2=2).real
        return np.rint(traces).astype(np.int64)

    def frame(self, beta: MultiIndex) -> np.ndarray:
        beta = as_multi_index(beta)
        if not self.region.contains(beta):
            return np.zeros((self.k, 0), dtype=self.dtype)
        if self.subspace is None:
            return self.base.frame(beta)
        proj = self.projectors(np.array([beta.entries]))[0]
        u, s, _ = np.linalg.svd(proj)
        return u[:, : int(np.sum(s > 0.5))]

    def shell_points(self, n: int) -> np.ndarray:
        return self.region.shell_array(n)

    def describe(self) -> Dict[str, Any]:
        data = super().describe()
        data["base"] = self.base.describe()
        data["region"] = self.region.to_dict()
        if self.subspace is not None:
            data["subspace_dim"] = int(self.subspace.shape[1])
        return data


BlockField = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LatticeOperator:
    """
    A displacement-homogeneous operator given by its block field.

    ``blocks_fn`` maps an ``(N, m)`` batch of source points to ``(N, k, k)``
    blocks in ambient coordinates; blocks vanish wherever the source or the
    target leaves the domain.
    """
    displacement: Tuple[int, ...]
    domain: ModuleDomain = field(compare=False)
    blocks_fn: BlockField = field(compare=False, repr=False)
    kind: str = "custom"
    axes: Tuple[int, ...] = ()
    label: str = ""

    @property
    def m(self) -> int:
        return self.domain.m

    @property
    def k(self) -> int:
        return self.domain.k

    @property
    def delta(self) -> np.ndarray:
        return np.array(self.displacement, dtype=np.int64)

    def blocks(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        if len(points) == 0:
            return np.zeros((0, self.k, self.k), dtype=self.domain.dtype)
        return self.blocks_fn(points)

    def coefficient(self, beta: Any) -> np.ndarray:
        """The ``k x k`` block at ``beta`` in ambient coordinates."""
        entries = beta.entries if isinstance(beta, MultiIndex) else tuple(int(v) for v in beta)
        return self.blocks(np.array([entries], dtype=np.int64))[0]

    def value(self, beta: Any) -> complex:
        """Scalar coefficient for multiplicity one."""
        if self.k != 1:
            raise OperatorError("value() is only defined for k = 1")
        block = self.coefficient(beta)[0, 0]
        if np.iscomplexobj(block) and block.imag != 0:
            return complex(block)
        return float(np.real(block))

    def frame_coefficient(self, beta: Any) -> np.ndarray:
        """The block between fiber frames: ``F(beta + delta)^H K F(beta)``."""
        beta = as_multi_index(beta)
        target = tuple(b + d for b, d in zip(beta.entries, self.displacement))
        block = self.coefficient(beta)
        src = self.domain.frame(beta)
        if any(v < 0 for v in target):
            return np.zeros((0, src.shape[1]), dtype=block.dtype)
        dst = self.domain.frame(MultiIndex(target))
        return dst.conj().T @ block @ src

    def adjoint(self) -> "LatticeOperator":
        """The Hilbert-space adjoint: displacement negated, blocks conjugate-transposed."""
        delta = self.delta

        def blocks_fn(points: np.ndarray) -> np.ndarray:
            return np.conj(np.swapaxes(self.blocks(points - delta), 1, 2))

        return LatticeOperator(
            displacement=tuple(int(-d) for d in delta),
            domain=self.domain,
            blocks_fn=blocks_fn,
            kind=f"adjoint({self.kind})",
            axes=self.axes,
            label=f"{self.label}*" if self.label else "",
        )

    def shell_points(self, n: int) -> np.ndarray:
        return self.domain.shell_points(n)

    def describe(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "label": self.label,
            "axes": [a + 1 for a in self.axes],
            "displacement": list(self.displacement),
            "domain": self.domain.describe(),
        }


@dataclass(frozen=True)
class BlockSplit:
    """
    A truncated shift split along ``M = N (+) N^perp`` for a scalar submodule N.

    ``a`` acts on N, ``b`` maps the quotient into N, ``d`` is the quotient
    compression and ``c`` (quotient rows, submodule columns) must vanish.
    Residues are spectral norms measured on the degree ``N - 1`` sub-box.
    """
    axis: int
    max_degree: int
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    c: np.ndarray = field(repr=False)
    d: np.ndarray = field(repr=False)
    residue_submodule: float
    residue_quotient: float
    c_block_max: float
    submodule_size: int
    quotient_size: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "axis": self.axis + 1,
            "max_degree": self.max_degree,
            "submodule_size": self.submodule_size,
            "quotient_size": self.quotient_size,
            "residue_submodule": self.residue_submodule,
            "residue_quotient": self.residue_quotient,
            "c_block_max": self.c_block_max,
        }
