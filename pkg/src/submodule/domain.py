"""
Domain models for multiplicity-k monomial submodules.

A submodule of the ambient module tensored with C^k is given by generators
``(alpha_i, x_i)``; its fiber at beta is ``H_beta = span{x_i : alpha_i <= beta}``.
"""
import threading
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Hashable, List, Optional, Sequence, Tuple

import numpy as np

from lattice import MultiIndex, ShiftInvariantSet, as_multi_index
from utils.errors import EssnormError, SpecError

DEFAULT_RANK_CUTOFF = 1e-10


class SubmoduleError(EssnormError):
    """Raised for malformed submodule data or invalid fiber queries."""


class PatternCache:
    """
    Insert-once cache shared between threads.

    Reads are lock-free; inserts are serialized and the first stored value
    wins, so every reader sees the same object for a key.
    """

    def __init__(self):
        self._values: Dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        value = self._values.get(key)
        if value is not None:
            return value
        with self._lock:
            value = self._values.get(key)
            if value is None:
                value = compute()
                self._values[key] = value
            return value

    def __len__(self) -> int:
        return len(self._values)


@dataclass(frozen=True)
class Generator:
    """One generator ``z^alpha (x) x`` with ``x`` a nonzero vector in C^k."""
    alpha: MultiIndex
    x: Tuple[complex, ...]

    def vector(self) -> np.ndarray:
        return np.array(self.x)


@dataclass(frozen=True)
class VectorSubmodule:
    """
    Multiplicity-k monomial submodule.

    Generator order is significant: it fixes every orthonormalization so
    repeated runs are bit-identical.
    """
    m: int
    k: int
    generators: Tuple[Generator, ...] = ()
    rank_cutoff: float = DEFAULT_RANK_CUTOFF
    _cache: PatternCache = field(default_factory=PatternCache, init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.m < 1 or self.k < 1:
            raise SubmoduleError(f"need m >= 1 and k >= 1, got m={self.m}, k={self.k}")
        gens = []
        for gen in self.generators:
            alpha = as_multi_index(gen.alpha)
            if alpha.m != self.m:
                raise SubmoduleError(f"generator {alpha.entries} does not have {self.m} coordinates")
            x = tuple(complex(v) if isinstance(v, complex) else float(v) for v in gen.x)
            if len(x) != self.k:
                raise SubmoduleError(f"generator vector {x} does not have {self.k} entries")
            if not any(abs(v) > 0 for v in x):
                raise SubmoduleError(f"generator vector at {alpha.entries} is zero")
            gens.append(Generator(alpha, x))
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def scalar(cls, B: ShiftInvariantSet, rank_cutoff: float = DEFAULT_RANK_CUTOFF) -> "VectorSubmodule":
        """The k=1 submodule spanned by the monomials of ``B``."""
        gens = tuple(Generator(g, (1.0,)) for g in B.generators)
        return cls(m=B.m, k=1, generators=gens, rank_cutoff=rank_cutoff)

    @classmethod
    def from_pairs(
        cls,
        m: int,
        k: int,
        pairs: Sequence[Tuple[Sequence[int], Sequence[complex]]],
        rank_cutoff: float = DEFAULT_RANK_CUTOFF,
    ) -> "VectorSubmodule":
        gens = tuple(Generator(as_multi_index(a), tuple(x)) for a, x in pairs)
        return cls(m=m, k=k, generators=gens, rank_cutoff=rank_cutoff)

    @property
    def is_empty(self) -> bool:
        return not self.generators

    @property
    def is_complex(self) -> bool:
        return any(isinstance(v, complex) and v.imag != 0 for g in self.generators for v in g.x)

    @property
    def dtype(self):
        return np.complex128 if self.is_complex else np.float64

    def alpha_array(self) -> np.ndarray:
        if not self.generators:
            return np.zeros((0, self.m), dtype=np.int64)
        return np.array([g.alpha.entries for g in self.generators], dtype=np.int64)

    def vector_array(self) -> np.ndarray:
        """Generator vectors as rows of a ``(G, k)`` array."""
        if not self.generators:
            return np.zeros((0, self.k), dtype=self.dtype)
        return np.array([g.x for g in self.generators], dtype=self.dtype)

    def activation(self, points: np.ndarray) -> np.ndarray:
        """``(N, G)`` boolean matrix: generator i is active at point n when ``alpha_i <= beta_n``."""
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        alphas = self.alpha_array()
        if len(alphas) == 0:
            return np.zeros((len(points), 0), dtype=bool)
        return np.all(points[:, None, :] >= alphas[None, :, :], axis=2)

    def support(self) -> ShiftInvariantSet:
        """Points with a nonzero fiber."""
        return ShiftInvariantSet(self.m, tuple(g.alpha for g in self.generators))

    def with_generators(self, generators: Sequence[Generator]) -> "VectorSubmodule":
        return VectorSubmodule(self.m, self.k, tuple(generators), self.rank_cutoff)

    @property
    def cache(self) -> PatternCache:
        return self._cache

    def to_dict(self) -> Dict[str, Any]:
        def encode(v):
            if isinstance(v, complex):
                return [v.real, v.imag]
            return v

        return {
            "m": self.m,
            "k": self.k,
            "generators": [
                {"alpha": g.alpha.to_list(), "x": [encode(v) for v in g.x]}
                for g in self.generators
            ],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], rank_cutoff: float = DEFAULT_RANK_CUTOFF) -> "VectorSubmodule":
        """
        Parse the JSON form; a bare ``{"m", "generators": [[...]]}`` set is read as k=1.

        Args:
            data: Decoded JSON object
            rank_cutoff: Singular-value cutoff for fiber dimensions

        Returns:
            VectorSubmodule

        Raises:
            SpecError: With the path of the offending field
        """
        if not isinstance(data, dict):
            raise SpecError("expected an object", field="/")
        gens = data.get("generators", [])
        if "k" not in data and all(isinstance(g, list) for g in gens):
            return cls.scalar(ShiftInvariantSet.from_dict(data), rank_cutoff)

        m = data.get("m")
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise SpecError("dimension must be a positive integer", field="/m")
        k = data.get("k", 1)
        if not isinstance(k, int) or isinstance(k, bool) or k < 1:
            raise SpecError("multiplicity must be a positive integer", field="/k")
        if not isinstance(gens, list):
            raise SpecError("expected a list", field="/generators")
        parsed: List[Generator] = []
        for idx, gen in enumerate(gens):
            path = f"/generators/{idx}"
            if not isinstance(gen, dict):
                raise SpecError("expected an object with alpha and x", field=path)
            alpha = gen.get("alpha")
            if (
                not isinstance(alpha, list)
                or len(alpha) != m
                or any(not isinstance(a, int) or isinstance(a, bool) or a < 0 for a in alpha)
            ):
                raise SpecError(f"expected {m} nonnegative integers", field=f"{path}/alpha")
            x = gen.get("x", [1.0] if k == 1 else None)
            if not isinstance(x, list) or len(x) != k:
                raise SpecError(f"expected a vector of {k} entries", field=f"{path}/x")
            entries: List[Any] = []
            for pos, v in enumerate(x):
                if isinstance(v, list) and len(v) == 2 and all(_is_number(t) for t in v):
                    entries.append(complex(v[0], v[1]))
                elif _is_number(v):
                    entries.append(float(v))
                else:
                    raise SpecError("expected a number or [re, im]", field=f"{path}/x/{pos}")
            if not any(abs(v) > 0 for v in entries):
                raise SpecError("generator vector must be nonzero", field=f"{path}/x")
            parsed.append(Generator(MultiIndex(tuple(alpha)), tuple(entries)))
        return cls(m=m, k=k, generators=tuple(parsed), rank_cutoff=rank_cutoff)


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


@dataclass(frozen=True)
class FiberBasis:
    """Orthonormal basis (as columns) of a fiber or of its complement."""
    beta: MultiIndex
    basis: np.ndarray = field(compare=False)

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T


@dataclass(frozen=True)
class Filtration:
    """
    Fiber growth along one moving axis with the other coordinates frozen.

    ``breakpoints`` are the levels where the dimension strictly increases,
    each chosen as small as possible; ``jump_spaces[r]`` is an orthonormal
    basis of ``H_{n_r}`` minus ``H_{n_{r-1}}``.
    """
    frozen: Tuple[Tuple[int, int], ...]
    moving_axis: int
    breakpoints: Tuple[int, ...]
    dims: Tuple[int, ...]
    jump_spaces: Tuple[np.ndarray, ...] = field(compare=False)

    @property
    def final_dim(self) -> int:
        return self.dims[-1] if self.dims else 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "frozen": {str(a): k for a, k in self.frozen},
            "moving_axis": self.moving_axis,
            "breakpoints": list(self.breakpoints),
            "dims": list(self.dims),
            "jump_dims": [int(j.shape[1]) for j in self.jump_spaces],
        }


def frozen_pairs(frozen: Optional[Dict[int, int]]) -> Tuple[Tuple[int, int], ...]:
    return tuple(sorted((int(a), int(k)) for a, k in (frozen or {}).items()))
