"""
Dense brute-force truncations.

Everything here is built from explicit matrices: shifts from weight ratios,
fibers from their own orthonormalization, commutators and Grams by literal
products. Only the weight evaluator is shared with the closed-form path.
"""
import csv
from itertools import product
from typing import List, Optional, TextIO, Tuple

import numpy as np
from scipy.linalg import null_space, orth

from lattice import LatticeRegion, ShiftInvariantSet
from oracle.domain import (
    MAX_ORACLE_DEGREE,
    MAX_ORACLE_VARIABLES,
    DenseTruncation,
    OracleComparison,
    OracleError,
    OracleSizeError,
)
from schatten import ZERO_SINGULAR_VALUE, shell_singular_values
from shiftops import BlockSplit, LatticeOperator, RestrictedDomain, materialize
from submodule import VectorSubmodule
from utils.logger import get_logger
from weights import WeightSet

logger = get_logger(__name__)

TRUNCATION_KINDS = ("ambient", "submodule", "quotient")


def _lattice_points(m: int, max_degree: int) -> np.ndarray:
    points = [p for p in product(range(max_degree + 1), repeat=m) if sum(p) <= max_degree]
    points.sort(key=lambda p: (sum(p), p))
    return np.array(points, dtype=np.int64).reshape(-1, m)


def _check_size(m: int, max_degree: int) -> None:
    if m > MAX_ORACLE_VARIABLES or max_degree > MAX_ORACLE_DEGREE:
        raise OracleSizeError(
            f"dense truncation limited to m <= {MAX_ORACLE_VARIABLES} and N <= {MAX_ORACLE_DEGREE}, "
            f"got m={m}, N={max_degree}"
        )
    if max_degree < 0:
        raise OracleError(f"degree cap must be nonnegative, got {max_degree}")


def _frame(kind: str, k: int, rows: np.ndarray, dtype) -> np.ndarray:
    if kind == "ambient":
        return np.eye(k, dtype=dtype)
    if kind == "submodule":
        if len(rows) == 0:
            return np.zeros((k, 0), dtype=dtype)
        return orth(rows.T).astype(dtype)
    if len(rows) == 0:
        return np.eye(k, dtype=dtype)
    return null_space(rows.conj()).astype(dtype)


def build(
    W: WeightSet,
    kind: str = "ambient",
    S: Optional[VectorSubmodule] = None,
    max_degree: int = 10,
    k: int = 1,
) -> DenseTruncation:
    """
    Materialize a truncated module and its coordinate shifts.

    Args:
        W: Weight set
        kind: ``ambient``, ``submodule`` or ``quotient``
        S: Submodule (required unless ambient; also fixes k)
        max_degree: Degree cap N
        k: Multiplicity when no submodule is given

    Returns:
        DenseTruncation

    Raises:
        OracleSizeError: m > 3 or N > 16
    """
    m = W.m
    _check_size(m, max_degree)
    if kind not in TRUNCATION_KINDS:
        raise OracleError(f"unknown truncation kind {kind!r}; expected one of {TRUNCATION_KINDS}")
    if kind != "ambient" and S is None:
        raise OracleError(f"{kind} truncation needs a submodule")
    if S is not None:
        if S.m != m:
            raise OracleError(f"submodule has {S.m} variables, weights have {m}")
        k = S.k
    dtype = S.dtype if S is not None else np.float64

    points = _lattice_points(m, max_degree)
    index = {tuple(int(v) for v in p): row for row, p in enumerate(points)}
    lams = W.lam_array(points)
    size = len(points) * k

    ambient_shifts = []
    for axis in range(m):
        z = np.zeros((size, size), dtype=dtype)
        for col, p in enumerate(points):
            target = list(int(v) for v in p)
            target[axis] += 1
            row = index.get(tuple(target))
            if row is None:
                continue
            w = lams[row] / lams[col]
            for c in range(k):
                z[row * k + c, col * k + c] = w
        ambient_shifts.append(z)

    if S is not None and S.generators:
        alphas = np.array([g.alpha.entries for g in S.generators], dtype=np.int64)
        vectors = np.array([g.x for g in S.generators], dtype=dtype)
    else:
        alphas = np.zeros((0, m), dtype=np.int64)
        vectors = np.zeros((0, k), dtype=dtype)

    frames = []
    for p in points:
        active = np.all(alphas <= p, axis=1)
        frames.append(_frame(kind, k, vectors[active], dtype))

    dims = [f.shape[1] for f in frames]
    embedding = np.zeros((size, sum(dims)), dtype=dtype)
    offset = 0
    for row, frame in enumerate(frames):
        embedding[row * k:(row + 1) * k, offset:offset + frame.shape[1]] = frame
        offset += frame.shape[1]

    shifts = tuple(embedding.conj().T @ z @ embedding for z in ambient_shifts)
    logger.debug(f"dense {kind} truncation m={m}, k={k}, N={max_degree}: basis size {offset}")
    return DenseTruncation(
        m=m,
        k=k,
        max_degree=max_degree,
        kind=kind,
        points=points,
        frames=tuple(frames),
        embedding=embedding,
        ambient_shifts=tuple(ambient_shifts),
        shifts=shifts,
        submodule=S,
    )


def _layers(op: LatticeOperator):
    """Unwrap restricted domains, innermost last."""
    layers = []
    domain = op.domain
    while isinstance(domain, RestrictedDomain):
        layers.append((domain.region, domain.subspace))
        domain = domain.base
    return domain, layers[::-1]


def _compress(trunc: DenseTruncation, q: np.ndarray, region: LatticeRegion, subspace) -> np.ndarray:
    mask = np.repeat(region.contains_array(trunc.points), trunc.k).astype(q.dtype)
    out = mask[:, None] * q * mask[None, :]
    if subspace is not None:
        pj = np.kron(np.eye(len(trunc.points)), subspace @ subspace.conj().T)
        out = pj @ out @ pj
    return out


def dense_operator(op: LatticeOperator, trunc: DenseTruncation) -> np.ndarray:
    """
    The dense counterpart of a closed-form operator in ambient coordinates.

    Args:
        op: Shift, commutator or edge Gram, possibly restricted
        trunc: Truncation of the operator's base module

    Returns:
        Square matrix in the ``(beta, c)`` layout of ``materialize``
    """
    base, layers = _layers(op)
    if base.kind != trunc.kind or base.m != trunc.m or base.k != trunc.k:
        raise OracleError(f"operator acts on a {base.kind} module, truncation is {trunc.kind}")
    if trunc.kind != "ambient" and getattr(base, "submodule", None) != trunc.submodule:
        raise OracleError("operator and truncation use different submodules")

    if op.kind == "shift":
        dense = trunc.shift(op.axes[0])
    elif op.kind in ("cross_commutator", "self_commutator"):
        i = op.axes[0]
        j = op.axes[1] if len(op.axes) > 1 else i
        dense = trunc.commutator(i, j)
    elif op.kind == "edge_gram":
        dense = trunc.edge_gram(op.axes[0])
    else:
        raise OracleError(f"no dense counterpart for operator kind {op.kind!r}")

    matrix = trunc.lift(dense)
    q = trunc.projector()
    for region, subspace in layers:
        q = _compress(trunc, q, region, subspace)
        matrix = q @ matrix @ q
    return matrix


def _inner_columns(trunc: DenseTruncation) -> np.ndarray:
    return trunc.ambient_degrees() <= trunc.max_degree - 1


def compare(op: LatticeOperator, trunc: DenseTruncation) -> float:
    """
    Max-abs deviation between the closed form and the dense matrix.

    Only columns of degree at most ``N - 1`` are compared, where truncation
    does not cut products short.
    """
    dense = dense_operator(op, trunc)
    closed = materialize(op, trunc.max_degree)
    cols = _inner_columns(trunc)
    if not cols.any():
        return 0.0
    return float(np.abs(closed[:, cols] - dense[:, cols]).max())


def _nonzero_sorted(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=float)
    return np.sort(values[values > ZERO_SINGULAR_VALUE])[::-1]


def compare_shell_spectra(op: LatticeOperator, trunc: DenseTruncation, n: int) -> float:
    """
    Deviation between closed-form and dense singular values on shell ``n``.

    Args:
        op: Lattice operator
        trunc: Truncation with ``n <= N - 1``
        n: Shell degree

    Returns:
        Max-abs difference of the sorted nonzero values (zero-padded)
    """
    if not 0 <= n <= trunc.max_degree - 1:
        raise OracleError(f"shell {n} outside the exact range of a degree-{trunc.max_degree} truncation")
    dense = dense_operator(op, trunc)
    cols = trunc.ambient_degrees() == n
    dense_values = _nonzero_sorted(np.linalg.svd(dense[:, cols], compute_uv=False))
    closed_values = _nonzero_sorted(shell_singular_values(op, n))
    size = max(len(dense_values), len(closed_values))
    if size == 0:
        return 0.0
    a = np.pad(dense_values, (0, size - len(dense_values)))
    b = np.pad(closed_values, (0, size - len(closed_values)))
    return float(np.abs(a - b).max())


def compare_operator(op: LatticeOperator, trunc: DenseTruncation) -> OracleComparison:
    """Entrywise and per-shell comparison, plus a symmetry check for self-adjoint kinds."""
    deviation = compare(op, trunc)
    shell_dev = max(compare_shell_spectra(op, trunc, n) for n in range(trunc.max_degree))
    hermitian = None
    if op.kind in ("self_commutator", "edge_gram") or (
        op.kind == "cross_commutator" and op.axes[0] == op.axes[1]
    ):
        hermitian = trunc.is_hermitian(dense_operator(op, trunc))
    logger.info(f"oracle {op.label}: deviation {deviation:.3e}, shell deviation {shell_dev:.3e}")
    return OracleComparison(
        label=op.label,
        max_degree=trunc.max_degree,
        deviation=deviation,
        shell_deviation=shell_dev,
        hermitian=hermitian,
    )


def _spectral(x: np.ndarray) -> float:
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def dense_block_split(W: WeightSet, axis: int, B: ShiftInvariantSet, max_degree: int) -> BlockSplit:
    """
    The 2x2 block-commutator identity recomputed from dense projectors.

    Args:
        W: Weight set
        axis: 0-based shift axis
        B: Shift-invariant set of the scalar submodule
        max_degree: Truncation degree N (at least 2)

    Returns:
        BlockSplit whose residues are measured on the degree ``N - 1`` sub-box
    """
    if max_degree < 2:
        raise OracleError(f"block split needs max degree >= 2, got {max_degree}")
    trunc = build(W, "ambient", None, max_degree)
    z = trunc.ambient_shifts[axis]
    gens = [g.entries for g in B.generators]
    inside = np.array(
        [any(all(a <= b for a, b in zip(g, p)) for g in gens) for p in trunc.points], dtype=bool
    )
    p_sub = np.diag(inside.astype(float))
    p_quo = np.eye(len(inside)) - p_sub

    a = p_sub @ z @ p_sub
    b = p_sub @ z @ p_quo
    c = p_quo @ z @ p_sub
    d = p_quo @ z @ p_quo
    gap = z.T @ z - z @ z.T
    top = p_sub @ gap @ p_sub - (a.T @ a - a @ a.T - b @ b.T)
    bottom = p_quo @ gap @ p_quo - (d.T @ d - d @ d.T + b.T @ b)

    inner = trunc.points.sum(axis=1) <= max_degree - 1
    sub, quo = np.flatnonzero(inside), np.flatnonzero(~inside)
    residue_sub = _spectral(top[np.ix_(inner, inner)])
    residue_quo = _spectral(bottom[np.ix_(inner, inner)])
    c_max = float(np.abs(c).max()) if c.size else 0.0
    return BlockSplit(
        axis=axis,
        max_degree=max_degree,
        a=a[np.ix_(sub, sub)],
        b=b[np.ix_(sub, quo)],
        c=c[np.ix_(quo, sub)],
        d=d[np.ix_(quo, quo)],
        residue_submodule=residue_sub,
        residue_quotient=residue_quo,
        c_block_max=c_max,
        submodule_size=len(sub),
        quotient_size=len(quo),
    )


def _basis_labels(trunc: DenseTruncation, ambient: bool) -> List[str]:
    if ambient:
        return [
            "(" + ",".join(str(int(v)) for v in p) + f")#{c}"
            for p in trunc.points
            for c in range(trunc.k)
        ]
    return ["(" + ",".join(str(v) for v in beta) + f")#{j}" for beta, j in trunc.basis()]


def _format_entry(value) -> str:
    if np.iscomplexobj(value):
        if value.imag == 0:
            return f"{value.real:.17g}"
        return f"{value.real:.17g}{value.imag:+.17g}j"
    return f"{float(value):.17g}"


def write_matrix_csv(
    trunc: DenseTruncation,
    matrix: np.ndarray,
    handle: TextIO,
    ambient: bool = False,
) -> None:
    """
    Write a dense matrix as CSV with basis labels on both axes.

    Args:
        trunc: Truncation the matrix belongs to
        matrix: Basis-coordinate matrix, or ambient-coordinate with ``ambient=True``
        handle: Text stream
        ambient: Label rows by ``(beta, c)`` instead of ``(beta, j)``
    """
    expected = len(trunc.points) * trunc.k if ambient else trunc.size
    if matrix.shape != (expected, expected):
        raise OracleError(f"matrix of shape {matrix.shape} does not fit this truncation")
    labels = _basis_labels(trunc, ambient)
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow([""] + labels)
    for label, row in zip(labels, matrix):
        writer.writerow([label] + [_format_entry(v) for v in row])


def shift_matrices(trunc: DenseTruncation) -> List[Tuple[str, np.ndarray]]:
    """Named basis-coordinate shift matrices, in axis order."""
    prefix = {"ambient": "Z", "submodule": "Y", "quotient": "N"}[trunc.kind]
    return [(f"{prefix}{axis + 1}", trunc.shift(axis)) for axis in range(trunc.m)]
