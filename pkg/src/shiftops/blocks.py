"""
The 2x2 block-commutator identity for a scalar monomial submodule.

Writing ``T = Z_i`` on ``M = N (+) N^perp`` as ``[[A, B], [C, D]]`` with
``C = 0`` gives ``[T*, T]_11 = [A*, A] - B B*`` and
``[T*, T]_22 = [D*, D] + B* B``.
"""
import numpy as np

from lattice import ShiftInvariantSet, truncation_array
from shiftops.domain import BlockSplit, OperatorError
from shiftops.operators import materialize, shift_op
from utils.logger import get_logger
from weights import WeightSet

logger = get_logger(__name__)


def _gram_gap(x: np.ndarray) -> np.ndarray:
    return x.conj().T @ x - x @ x.conj().T


def _spectral(x: np.ndarray) -> float:
    if x.size == 0:
        return 0.0
    return float(np.linalg.norm(x, 2))


def block_split(W: WeightSet, axis: int, B: ShiftInvariantSet, max_degree: int) -> BlockSplit:
    """
    Split the truncated shift along a submodule and measure the identity residues.

    Args:
        W: Weight set
        axis: 0-based shift axis
        B: Shift-invariant set of the scalar submodule
        max_degree: Truncation degree N (at least 2)

    Returns:
        BlockSplit with residues on the degree ``N - 1`` sub-box
    """
    if max_degree < 2:
        raise OperatorError(f"block split needs max degree >= 2, got {max_degree}")
    if B.m != W.m:
        raise OperatorError(f"set has {B.m} coordinates, weights have {W.m}")

    z = materialize(shift_op(W, axis), max_degree)
    points = truncation_array(W.m, max_degree)
    in_sub = B.contains_array(points)
    sub, quo = np.flatnonzero(in_sub), np.flatnonzero(~in_sub)

    a = z[np.ix_(sub, sub)]
    b = z[np.ix_(sub, quo)]
    c = z[np.ix_(quo, sub)]
    d = z[np.ix_(quo, quo)]

    full = _gram_gap(z)
    inner = points.sum(axis=1) <= max_degree - 1
    sub_inner = inner[sub]
    quo_inner = inner[quo]

    top = full[np.ix_(sub, sub)] - (_gram_gap(a) - b @ b.conj().T)
    bottom = full[np.ix_(quo, quo)] - (_gram_gap(d) + b.conj().T @ b)
    residue_sub = _spectral(top[np.ix_(sub_inner, sub_inner)])
    residue_quo = _spectral(bottom[np.ix_(quo_inner, quo_inner)])
    c_max = float(np.abs(c).max()) if c.size else 0.0

    logger.info(
        f"block split axis {axis + 1}, N={max_degree}: "
        f"residues {residue_sub:.3e} / {residue_quo:.3e}, C-block max {c_max:.3e}"
    )
    return BlockSplit(
        axis=axis,
        max_degree=max_degree,
        a=a,
        b=b,
        c=c,
        d=d,
        residue_submodule=residue_sub,
        residue_quotient=residue_quo,
        c_block_max=c_max,
        submodule_size=len(sub),
        quotient_size=len(quo),
    )
