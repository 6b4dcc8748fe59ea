"""
Numeric audit of a BlockTree.

Every block is checked with the operator its mechanism names: ambient
commutators compressed to interiors, edge-operator Grams on faces and on
induction slices, and nothing for finite defects.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from config.settings import DEFAULT_MARGIN, DEFAULT_MAX_DEGREE
from decomp.domain import AuditEntry, AuditReport, Block, BlockTree, Mechanism
from schatten import SchattenError, Verdict, verdict
from shiftops import AmbientDomain, LatticeOperator, cross_commutator, edge_operator_gram, restrict
from submodule import VectorSubmodule
from utils.logger import get_logger
from weights import WeightSet

logger = get_logger(__name__)


@dataclass
class _Check:
    block: Block
    label: str
    build: Optional[Callable[[], LatticeOperator]]


def _commutator_checks(W: WeightSet, S: VectorSubmodule, block: Block) -> List[_Check]:
    checks = []
    free = block.region.free_axes
    subspace = block.jump_space if S.k > 1 else None
    ambient = AmbientDomain(W.m, S.k, S.dtype)
    for i in free:
        for j in free:
            def build(i=i, j=j):
                return restrict(cross_commutator(W, i, j, ambient), block.region, subspace)

            checks.append(_Check(block, f"[Z{i + 1}*,Z{j + 1}]", build))
    return checks


def _edge_check(W: WeightSet, block: Block, axis: int) -> _Check:
    def build():
        return edge_operator_gram(W, axis, block.region)

    return _Check(block, f"X{axis + 1}*X{axis + 1}", build)


def _checks_for(W: WeightSet, S: VectorSubmodule, tree: BlockTree) -> List[_Check]:
    checks: List[_Check] = []
    for block in tree.blocks():
        if block.mechanism is Mechanism.INDUCTION:
            checks.append(_edge_check(W, block, block.axis))
        elif block.mechanism is Mechanism.FINITE_DEFECT:
            checks.append(_Check(block, "finite rank", None))
        if not block.is_leaf or block.mechanism is not Mechanism.CONE_TENSOR:
            continue
        for axis in sorted(block.views):
            interior, face = block.views[axis]
            checks.extend(_commutator_checks(W, S, interior))
            if face.mechanism is Mechanism.EDGE_OPERATOR:
                checks.append(_edge_check(W, face, axis))
            else:
                checks.extend(_commutator_checks(W, S, face))
    return checks


def audit(
    S: VectorSubmodule,
    tree: BlockTree,
    W: WeightSet,
    p: Optional[float] = None,
    max_degree: int = DEFAULT_MAX_DEGREE,
    margin: float = DEFAULT_MARGIN,
    window: Optional[Tuple[int, int]] = None,
    threads: int = 1,
) -> AuditReport:
    """
    Run the verdict each block's mechanism calls for.

    Args:
        S: The submodule the tree was built from
        tree: Its BlockTree
        W: Weight set
        p: Schatten order, defaults to ``m + 1``
        max_degree: Last shell
        margin: Verdict margin
        window: Fit window
        threads: Checks evaluated concurrently; entries keep tree order

    Returns:
        AuditReport; the aggregate is diverged if any block diverges and
        converged only when every block converges
    """
    if tree.submodule is not S and tree.submodule.to_dict() != S.to_dict():
        raise ValueError("tree was built from a different submodule")
    order = float(W.m + 1) if p is None else float(p)
    checks = _checks_for(W, S, tree)
    logger.info(f"auditing {len(checks)} operator(s) at p={order}, max degree {max_degree}")

    def run(check: _Check) -> AuditEntry:
        name = check.block.label()
        if check.build is None:
            return AuditEntry(name, check.block.mechanism.value, check.label, Verdict.CONVERGED.value)
        try:
            result = verdict(check.build(), order, max_degree, margin, window)
        except SchattenError as e:
            logger.warning(f"{name} {check.label}: {e}")
            return AuditEntry(
                name, check.block.mechanism.value, check.label, Verdict.INCONCLUSIVE.value, notes=[str(e)]
            )
        slope = result.schatten_fit.slope if result.schatten_fit else None
        return AuditEntry(
            name, check.block.mechanism.value, check.label, result.verdict.value, slope, result.notes
        )

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            entries = list(pool.map(run, checks))
    else:
        entries = [run(c) for c in checks]

    outcomes = [e.verdict for e in entries]
    if Verdict.DIVERGED.value in outcomes:
        overall = Verdict.DIVERGED
    elif all(v == Verdict.CONVERGED.value for v in outcomes):
        overall = Verdict.CONVERGED
    else:
        overall = Verdict.INCONCLUSIVE
    logger.info(f"audit verdict: {overall.value}")
    return AuditReport(verdict=overall.value, p=order, max_degree=max_degree, entries=entries)
