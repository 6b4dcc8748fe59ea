"""
Operator conditions on weight sets.

Each checker evaluates one condition and returns a ConditionReport;
ConditionEvaluator is the facade that dispatches by name.
"""
from typing import Any, Dict, List, Optional

from config.settings import DEFAULT_MARGIN, DEFAULT_MAX_DEGREE
from lattice import multi_slices
from schatten.domain import CompactnessVerdict, ConditionReport, Verdict
from schatten.fitting import verdict
from shiftops import cross_commutator, restrict
from utils.logger import get_logger
from weights import WeightSet, check_contractive

CONDITIONS = ("star", "star_star", "star_star_p", "star_star_sup")


def _aggregate(verdicts: List[Verdict]) -> Dict[str, Any]:
    if any(v is Verdict.DIVERGED for v in verdicts):
        return {"holds": False, "verdict": "violated"}
    if all(v is Verdict.CONVERGED for v in verdicts):
        return {"holds": True, "verdict": "holds"}
    return {"holds": None, "verdict": "inconclusive"}


class StarChecker:
    """Every coordinate shift is a contraction."""

    def __init__(self):
        self.logger = get_logger(__name__)

    def evaluate(self, W: WeightSet, max_degree: int = 100, **_) -> ConditionReport:
        result = check_contractive(W, max_degree)
        self.logger.info(f"contractivity up to degree {max_degree}: {result.verdict}")
        return ConditionReport(
            condition="star",
            holds=result.holds,
            verdict=result.verdict,
            entries={"contractive": result.to_dict()},
            metadata={"m": W.m, "family": W.family, "max_degree": max_degree},
        )


class StarStarChecker:
    """
    Every commutator ``[Z_i*, Z_j]`` is compact.

    With ``p`` given the commutators must also lie in the Schatten p-class.
    """

    def __init__(self, p: Optional[float] = None):
        self.p = p
        self.logger = get_logger(__name__)

    def evaluate(
        self,
        W: WeightSet,
        max_degree: int = DEFAULT_MAX_DEGREE,
        margin: float = DEFAULT_MARGIN,
        window=None,
        threads: int = 1,
        **_,
    ) -> ConditionReport:
        order = self.p if self.p is not None else float(W.m + 1)
        entries: Dict[str, Dict[str, Any]] = {}
        outcomes: List[Verdict] = []
        warnings: List[str] = []
        for i in range(W.m):
            for j in range(W.m):
                op = cross_commutator(W, i, j)
                result: CompactnessVerdict = verdict(op, order, max_degree, margin, window, threads)
                outcome = result.verdict if self.p is not None else result.compactness
                outcomes.append(outcome)
                entries[op.label] = result.to_dict()
                if outcome is Verdict.INCONCLUSIVE:
                    warnings.append(f"{op.label} inconclusive at p={order}")
        summary = _aggregate(outcomes)
        name = "star_star" if self.p is None else "star_star_p"
        self.logger.info(f"{name} for {W.family}, m={W.m}: {summary['verdict']}")
        return ConditionReport(
            condition=name,
            holds=summary["holds"],
            verdict=summary["verdict"],
            entries=entries,
            warnings=warnings,
            metadata={"m": W.m, "family": W.family, "p": self.p, "max_degree": max_degree},
        )


class StarStarSupChecker:
    """
    Commutators compressed to multi-slices lie in the Schatten q-class.

    A multi-slice freezing c coordinates is tested at ``q = m - c + q_offset``,
    for every pair of its free axes.
    """

    def __init__(self, level_cap: int = 2, q_offset: float = 1.0):
        self.level_cap = level_cap
        self.q_offset = q_offset
        self.logger = get_logger(__name__)

    def evaluate(
        self,
        W: WeightSet,
        max_degree: int = DEFAULT_MAX_DEGREE,
        margin: float = DEFAULT_MARGIN,
        window=None,
        threads: int = 1,
        **_,
    ) -> ConditionReport:
        entries: Dict[str, Dict[str, Any]] = {}
        outcomes: List[Verdict] = []
        warnings: List[str] = []
        slices = multi_slices(W.m, W.m - 1, self.level_cap)
        for ms in slices:
            q = W.m - ms.codim + self.q_offset
            free = ms.free_axes(W.m)
            for i in free:
                for j in free:
                    op = restrict(cross_commutator(W, i, j), ms)
                    result = verdict(op, q, max_degree, margin, window, threads)
                    outcomes.append(result.verdict)
                    data = result.to_dict()
                    data["slice"] = ms.label()
                    data["codim"] = ms.codim
                    entries[f"{ms.label()}:{op.label.split('|')[0]}"] = data
                    if result.verdict is Verdict.INCONCLUSIVE:
                        warnings.append(f"{ms.label()} {op.label} inconclusive at q={q}")
        summary = _aggregate(outcomes)
        self.logger.info(
            f"star_star_sup over {len(slices)} multi-slices (level cap {self.level_cap}): "
            f"{summary['verdict']}"
        )
        return ConditionReport(
            condition="star_star_sup",
            holds=summary["holds"],
            verdict=summary["verdict"],
            entries=entries,
            warnings=warnings,
            metadata={
                "m": W.m,
                "family": W.family,
                "level_cap": self.level_cap,
                "q_offset": self.q_offset,
                "max_degree": max_degree,
            },
        )


class ConditionEvaluator:
    """Facade that runs a named condition check."""

    def __init__(self):
        self.logger = get_logger(__name__)

    def check(self, W: WeightSet, which: str, params: Optional[Dict[str, Any]] = None) -> ConditionReport:
        """
        Run one condition.

        Args:
            W: Weight set
            which: One of ``star``, ``star_star``, ``star_star_p``, ``star_star_sup``
            params: ``max_degree``, ``margin``, ``window``, ``threads``; ``p`` for
                star_star_p; ``level_cap`` and ``q_offset`` for star_star_sup

        Returns:
            ConditionReport
        """
        params = dict(params or {})
        if which == "star":
            checker = StarChecker()
        elif which == "star_star":
            checker = StarStarChecker()
        elif which == "star_star_p":
            if "p" not in params:
                raise ValueError("star_star_p needs the Schatten order p")
            checker = StarStarChecker(p=float(params.pop("p")))
        elif which == "star_star_sup":
            checker = StarStarSupChecker(
                level_cap=int(params.pop("level_cap", 2)),
                q_offset=float(params.pop("q_offset", 1.0)),
            )
        else:
            raise ValueError(f"unknown condition {which!r}; expected one of {CONDITIONS}")
        self.logger.debug(f"checking {which} with {sorted(params)}")
        return checker.evaluate(W, **params)


def check_condition(W: WeightSet, which: str, params: Optional[Dict[str, Any]] = None) -> ConditionReport:
    return ConditionEvaluator().check(W, which, params)
