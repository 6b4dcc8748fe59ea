"""
Domain models for lattice combinatorics.

Points of the nonnegative integer lattice, shift-invariant sets given by
generator antichains, slices, and regions (cones, faces, slabs and finite
point lists) that the operator layer restricts to.
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from utils.errors import EssnormError, SpecError


class LatticeError(EssnormError):
    """Base class for lattice errors."""


class EmptySetError(LatticeError):
    """Raised when an operation needs a nonempty set."""


class DimensionMismatchError(LatticeError):
    """Raised when indices of different dimensions are mixed."""


@dataclass(frozen=True, order=True)
class MultiIndex:
    """A point of the nonnegative integer lattice in m variables."""
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in entries):
            raise LatticeError(f"multi-index entries must be nonnegative: {entries}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "MultiIndex":
        """Build from positional entries: ``MultiIndex.of(2, 3)``."""
        return cls(tuple(entries))

    @classmethod
    def zero(cls, m: int) -> "MultiIndex":
        return cls((0,) * m)

    @classmethod
    def unit(cls, m: int, axis: int) -> "MultiIndex":
        entries = [0] * m
        entries[axis] = 1
        return cls(tuple(entries))

    @property
    def m(self) -> int:
        return len(self.entries)

    @property
    def degree(self) -> int:
        return sum(self.entries)

    def leq(self, other: "MultiIndex") -> bool:
        """Componentwise comparison ``self <= other``."""
        _check_same_dim(self.m, other.m)
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def shifted(self, axis: int, step: int = 1) -> "MultiIndex":
        entries = list(self.entries)
        entries[axis] += step
        return MultiIndex(tuple(entries))

    def drop(self, axis: int) -> "MultiIndex":
        return MultiIndex(self.entries[:axis] + self.entries[axis + 1:])

    def __getitem__(self, axis: int) -> int:
        return self.entries[axis]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_list(self) -> List[int]:
        return list(self.entries)


def as_multi_index(value: Any) -> MultiIndex:
    """Coerce a MultiIndex, tuple or list into a MultiIndex."""
    if isinstance(value, MultiIndex):
        return value
    return MultiIndex(tuple(value))


def _check_same_dim(m: int, other: int) -> None:
    if m != other:
        raise DimensionMismatchError(f"dimension mismatch: {m} vs {other}")


def _minimal_antichain(points: Iterable[MultiIndex]) -> Tuple[MultiIndex, ...]:
    unique = sorted(set(points))
    minimal = [
        p for p in unique
        if not any(q != p and q.leq(p) for q in unique)
    ]
    return tuple(minimal)


@dataclass(frozen=True)
class ShiftInvariantSet:
    """
    A subset of the lattice closed under adding unit vectors.

    Stored intensionally through its minimal generators (an antichain kept
    in lexicographic order); an empty generator list is the empty set.
    """
    m: int
    generators: Tuple[MultiIndex, ...] = ()

    def __post_init__(self):
        if self.m < 0:
            raise LatticeError(f"dimension must be nonnegative, got {self.m}")
        gens = tuple(as_multi_index(g) for g in self.generators)
        for g in gens:
            _check_same_dim(self.m, g.m)
        object.__setattr__(self, "generators", _minimal_antichain(gens))

    @classmethod
    def full(cls, m: int) -> "ShiftInvariantSet":
        """The whole lattice, generated by the origin."""
        return cls(m, (MultiIndex.zero(m),))

    @classmethod
    def empty(cls, m: int) -> "ShiftInvariantSet":
        return cls(m, ())

    @property
    def is_empty(self) -> bool:
        return not self.generators

    def contains(self, beta: Any) -> bool:
        beta = as_multi_index(beta)
        _check_same_dim(self.m, beta.m)
        return any(g.leq(beta) for g in self.generators)

    __contains__ = contains

    def generator_array(self) -> np.ndarray:
        """Generators as an ``(G, m)`` int64 array."""
        if not self.generators:
            return np.zeros((0, self.m), dtype=np.int64)
        return np.array([g.entries for g in self.generators], dtype=np.int64)

    def contains_array(self, points: np.ndarray) -> np.ndarray:
        """Vectorized membership for an ``(N, m)`` array of points."""
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        if not self.generators:
            return np.zeros(len(points), dtype=bool)
        gens = self.generator_array()
        mask = np.zeros(len(points), dtype=bool)
        for g in gens:
            mask |= np.all(points >= g, axis=1)
        return mask

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "generators": [g.to_list() for g in self.generators]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ShiftInvariantSet":
        if not isinstance(data, dict):
            raise SpecError("expected an object", field="/")
        if "m" not in data:
            raise SpecError("missing dimension", field="/m")
        m = data["m"]
        if not isinstance(m, int) or isinstance(m, bool) or m < 1:
            raise SpecError("dimension must be a positive integer", field="/m")
        gens = data.get("generators", [])
        if not isinstance(gens, list):
            raise SpecError("expected a list", field="/generators")
        points = []
        for idx, g in enumerate(gens):
            points.append(_parse_point(g, m, f"/generators/{idx}"))
        return cls(m, tuple(points))


def _parse_point(value: Any, m: int, field_path: str) -> MultiIndex:
    if not isinstance(value, list) or len(value) != m:
        raise SpecError(f"expected a list of {m} nonnegative integers", field=field_path)
    for pos, entry in enumerate(value):
        if not isinstance(entry, int) or isinstance(entry, bool) or entry < 0:
            raise SpecError("expected a nonnegative integer", field=f"{field_path}/{pos}")
    return MultiIndex(tuple(value))


@dataclass(frozen=True)
class LatticeSlice:
    """The slice ``{alpha : alpha[axis] == level}``."""
    axis: int
    level: int

    def __post_init__(self):
        if self.axis < 0 or self.level < 0:
            raise LatticeError(f"invalid slice ({self.axis}, {self.level})")

    def region(self, m: int) -> "LatticeRegion":
        return LatticeRegion.slab(m, fixed={self.axis: self.level})


@dataclass(frozen=True)
class MultiSlice:
    """
    Several coordinates frozen at once.

    ``codim`` is the number of frozen axes; the remaining axes are free.
    """
    axes: Tuple[int, ...]
    levels: Tuple[int, ...]

    def __post_init__(self):
        if len(self.axes) != len(self.levels):
            raise LatticeError("multi-slice needs one level per axis")
        if len(set(self.axes)) != len(self.axes):
            raise LatticeError(f"repeated axis in multi-slice: {self.axes}")
        order = sorted(range(len(self.axes)), key=lambda t: self.axes[t])
        object.__setattr__(self, "axes", tuple(int(self.axes[t]) for t in order))
        object.__setattr__(self, "levels", tuple(int(self.levels[t]) for t in order))

    @property
    def codim(self) -> int:
        return len(self.axes)

    def free_axes(self, m: int) -> Tuple[int, ...]:
        return tuple(a for a in range(m) if a not in self.axes)

    def region(self, m: int) -> "LatticeRegion":
        return LatticeRegion.slab(m, fixed=dict(zip(self.axes, self.levels)))

    def label(self) -> str:
        if not self.axes:
            return "all"
        return ",".join(f"z{a + 1}={k}" for a, k in zip(self.axes, self.levels))


@dataclass(frozen=True)
class LatticeRegion:
    """
    An intensional lattice set used to restrict operators.

    Either a box-like set (per-axis lower bounds plus frozen coordinates)
    or an explicit finite list of points.
    """
    m: int
    lower: Tuple[int, ...] = ()
    fixed: Tuple[Tuple[int, int], ...] = ()
    points: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __post_init__(self):
        lower = tuple(int(v) for v in self.lower) if self.lower else (0,) * self.m
        _check_same_dim(self.m, len(lower))
        fixed = tuple(sorted((int(a), int(k)) for a, k in self.fixed))
        lower = tuple(0 if any(a == axis for a, _ in fixed) else v for axis, v in enumerate(lower))
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "fixed", fixed)
        if self.points is not None:
            pts = tuple(sorted({tuple(int(e) for e in p) for p in self.points},
                               key=lambda p: (sum(p), p)))
            for p in pts:
                _check_same_dim(self.m, len(p))
            object.__setattr__(self, "points", pts)

    @classmethod
    def everything(cls, m: int) -> "LatticeRegion":
        return cls(m)

    @classmethod
    def cone(cls, apex: Any) -> "LatticeRegion":
        apex = as_multi_index(apex)
        return cls(apex.m, lower=apex.entries)

    @classmethod
    def slab(
        cls,
        m: int,
        fixed: Optional[Dict[int, int]] = None,
        lower: Optional[Dict[int, int]] = None,
    ) -> "LatticeRegion":
        bounds = [0] * m
        for axis, value in (lower or {}).items():
            bounds[axis] = value
        return cls(m, lower=tuple(bounds), fixed=tuple((fixed or {}).items()))

    @classmethod
    def finite(cls, m: int, points: Iterable[Any]) -> "LatticeRegion":
        return cls(m, points=tuple(tuple(as_multi_index(p).entries) for p in points))

    @property
    def is_finite(self) -> bool:
        return self.points is not None

    @property
    def fixed_axes(self) -> Tuple[int, ...]:
        return tuple(a for a, _ in self.fixed)

    @property
    def free_axes(self) -> Tuple[int, ...]:
        if self.points is not None:
            return ()
        frozen = self.fixed_axes
        return tuple(a for a in range(self.m) if a not in frozen)

    @property
    def apex(self) -> MultiIndex:
        """Smallest point of a box-like region."""
        entries = list(self.lower)
        for axis, level in self.fixed:
            entries[axis] = level
        return MultiIndex(tuple(entries))

    def with_lower(self, axis: int, value: int) -> "LatticeRegion":
        bounds = list(self.lower)
        bounds[axis] = value
        return LatticeRegion(self.m, lower=tuple(bounds), fixed=self.fixed)

    def with_fixed(self, axis: int, level: int) -> "LatticeRegion":
        fixed = dict(self.fixed)
        fixed[axis] = level
        return LatticeRegion(self.m, lower=self.lower, fixed=tuple(fixed.items()))

    def contains_array(self, points: np.ndarray) -> np.ndarray:
        points = np.asarray(points, dtype=np.int64).reshape(-1, self.m)
        if self.points is not None:
            if not self.points:
                return np.zeros(len(points), dtype=bool)
            table = np.array(self.points, dtype=np.int64)
            return (points[:, None, :] == table[None, :, :]).all(axis=2).any(axis=1)
        mask = np.all(points >= np.array(self.lower, dtype=np.int64), axis=1)
        for axis, level in self.fixed:
            mask &= points[:, axis] == level
        return mask

    def contains(self, beta: Any) -> bool:
        beta = as_multi_index(beta)
        return bool(self.contains_array(np.array([beta.entries]))[0])

    def shell_array(self, n: int) -> np.ndarray:
        """Points of the region with total degree ``n``, lexicographically ordered."""
        from lattice.combinatorics import shell_array

        if self.points is not None:
            rows = [p for p in self.points if sum(p) == n]
            return np.array(rows, dtype=np.int64).reshape(-1, self.m)
        free = self.free_axes
        base = np.array(self.apex.entries, dtype=np.int64)
        remaining = n - int(base.sum())
        if remaining < 0:
            return np.zeros((0, self.m), dtype=np.int64)
        if not free:
            if remaining == 0:
                return base.reshape(1, self.m)
            return np.zeros((0, self.m), dtype=np.int64)
        local = shell_array(len(free), remaining)
        out = np.tile(base, (len(local), 1))
        out[:, list(free)] += local
        return out

    def to_dict(self) -> Dict[str, Any]:
        if self.points is not None:
            return {"points": [list(p) for p in self.points]}
        return {
            "lower": list(self.lower),
            "fixed": {str(a): k for a, k in self.fixed},
        }

    def describe(self) -> str:
        """Compact human-readable form, 1-based axes."""
        if self.points is not None:
            return "{" + ", ".join(str(p) for p in self.points) + "}"
        parts = []
        frozen = dict(self.fixed)
        for axis in range(self.m):
            if axis in frozen:
                parts.append(f"z{axis + 1}={frozen[axis]}")
            elif self.lower[axis] > 0:
                parts.append(f"z{axis + 1}>={self.lower[axis]}")
        return " ".join(parts) if parts else "all"


def points_to_array(points: Sequence[Any], m: int) -> np.ndarray:
    """Stack multi-indices into an ``(N, m)`` int64 array."""
    if not points:
        return np.zeros((0, m), dtype=np.int64)
    return np.array([as_multi_index(p).entries for p in points], dtype=np.int64)


@dataclass(frozen=True)
class CofiniteDifference:
    """Result of comparing a set with the cone over its corner."""
    corner: MultiIndex
    finite: bool
    points: Tuple[MultiIndex, ...] = ()
    box_upper: Optional[MultiIndex] = None
    witness_axis: Optional[int] = None

    @property
    def verdict(self) -> str:
        return "finite" if self.finite else "infinite"

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "corner": self.corner.to_list(),
            "verdict": self.verdict,
        }
        if self.finite:
            data["points"] = [p.to_list() for p in self.points]
            data["box_upper"] = self.box_upper.to_list() if self.box_upper else None
        else:
            data["witness_ray"] = {"base": self.corner.to_list(), "axis": self.witness_axis}
        return data
