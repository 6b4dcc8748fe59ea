"""
Consistency of quotient commutator verdicts with the ``q > d`` threshold.
"""
from typing import Dict, List, Optional, Sequence, Tuple

from config.settings import DEFAULT_MARGIN, DEFAULT_MAX_DEGREE
from samuel.counting import dimension
from samuel.domain import SamuelReport, ThresholdCheck, ThresholdReport
from schatten import SchattenError, ShellSpectra, Verdict, verdict
from shiftops import QuotientDomain, cross_commutator
from submodule import VectorSubmodule
from utils.logger import get_logger
from weights import WeightSet

logger = get_logger(__name__)

CLOSED_FORM_FAMILIES = ("drury_arveson", "hardy_ball_like", "bergman_ball_like")


def threshold_consistency(
    S: VectorSubmodule,
    W: WeightSet,
    qs: Sequence[float],
    max_degree: int = DEFAULT_MAX_DEGREE,
    margin: float = DEFAULT_MARGIN,
    window: Optional[Tuple[int, int]] = None,
    threads: int = 1,
    samuel: Optional[SamuelReport] = None,
) -> ThresholdReport:
    """
    Check that every quotient commutator converges at order q exactly when q > d.

    Orders within ``margin`` of d are reported but not scored.

    Args:
        S: Vector submodule
        W: Weight set
        qs: Schatten orders to test
        max_degree: Last shell
        margin: Verdict margin, also the excluded band around d
        window: Fit window
        threads: Worker threads for shell evaluation
        samuel: Precomputed dimension report

    Returns:
        ThresholdReport
    """
    report = samuel if samuel is not None else dimension(S)
    d = report.d
    caveats: List[str] = []
    if W.family not in CLOSED_FORM_FAMILIES:
        caveats.append(f"{W.family} weights: the q > d threshold is stated for ball-type weights")

    domain = QuotientDomain(S)
    spectra: Dict[str, ShellSpectra] = {}
    for i in range(S.m):
        for j in range(S.m):
            op = cross_commutator(W, i, j, domain)
            spectra[op.label] = ShellSpectra(op, max_degree, threads)

    checks = []
    for q in qs:
        q = float(q)
        entries = {}
        outcomes = []
        for label, spec in spectra.items():
            try:
                result = verdict(spec, q, margin=margin, window=window)
                outcomes.append(result.verdict)
                entries[label] = result.to_dict()
            except SchattenError as e:
                outcomes.append(Verdict.INCONCLUSIVE)
                entries[label] = {"verdict": Verdict.INCONCLUSIVE.value, "error": str(e)}
        if any(v is Verdict.DIVERGED for v in outcomes):
            overall = Verdict.DIVERGED
        elif all(v is Verdict.CONVERGED for v in outcomes):
            overall = Verdict.CONVERGED
        else:
            overall = Verdict.INCONCLUSIVE

        expected = "converged" if q > d else "not converged"
        if abs(q - d) <= margin:
            agrees = None
        else:
            agrees = (overall is Verdict.CONVERGED) == (q > d)
        logger.info(f"q={q}: {overall.value} (expected {expected}, d={d})")
        checks.append(ThresholdCheck(q=q, expected=expected, verdict=overall.value, agrees=agrees, entries=entries))

    result = ThresholdReport(d=d, checks=checks, caveats=caveats)
    if not result.consistent:
        logger.warning(f"quotient verdicts disagree with q > {d}")
    return result
