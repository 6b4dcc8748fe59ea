"""
Report orchestrator for essnorm.

Runs condition checks, ambient verdicts, decomposition and audit, the
Hilbert-Samuel dimension and the q > d consistency check in sequence.
"""
from typing import Any, Callable, Dict, List, Optional

from config import load_config
from decomp import audit, full_reduction
from orchestrator.domain import REPORT_STEPS, ReportRequest, ReportResult, ReportStatus
from samuel import SamuelReport, dimension, threshold_consistency
from schatten import ConditionEvaluator, SchattenError, ShellSpectra, verdict
from shiftops import cross_commutator
from submodule import VectorSubmodule
from utils.errors import EssnormError
from utils.logger import get_logger
from weights import WeightSet


def default_orders(m: int) -> List[float]:
    """Schatten orders tried by default: just above the ambient threshold."""
    return [float(m + 1)]


def default_thresholds(d: int) -> List[float]:
    """Orders around the quotient dimension d, skipping nonpositive ones."""
    return [q for q in (d - 0.2, d + 0.5, d + 1.0, d + 2.0) if q > 0]


class ReportOrchestrator:
    """Orchestrator that runs every diagnostic for one weight set and submodule."""

    def __init__(self, config=None):
        """
        Initialize Report Orchestrator.

        Args:
            config: Config instance (optional, loads from env if not provided)
        """
        if config is None:
            config = load_config()

        self.config = config
        self.logger = get_logger(__name__)
        self.condition_evaluator = ConditionEvaluator()

    def request(self, W: WeightSet, **overrides: Any) -> ReportRequest:
        """Build a request from configuration defaults and explicit overrides."""
        values = {
            "ps": default_orders(W.m),
            "qs": [],
            "max_degree": self.config.max_degree,
            "margin": self.config.margin,
            "window": None,
            "threads": self.config.threads,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ReportRequest(**values)

    def _step(self, name: str, operation: Callable[[], Any], result: ReportResult) -> Any:
        self.logger.info(f"Step {REPORT_STEPS.index(name) + 1}: {name}")
        try:
            section = operation()
        except (EssnormError, ValueError) as e:
            error_msg = f"{name} failed: {e}"
            self.logger.error(error_msg)
            result.errors[name] = error_msg
            return None
        except Exception as e:
            error_msg = f"{name} failed with exception: {e}"
            self.logger.exception(error_msg)
            result.errors[name] = error_msg
            return None
        return section

    def _conditions(self, W: WeightSet, req: ReportRequest) -> Dict[str, Any]:
        window = tuple(req.window) if req.window else None
        params = {"max_degree": req.max_degree, "margin": req.margin, "window": window, "threads": req.threads}
        return {
            "star": self.condition_evaluator.check(W, "star").to_dict(),
            "star_star": self.condition_evaluator.check(W, "star_star", params).to_dict(),
        }

    def _ambient(self, W: WeightSet, req: ReportRequest) -> Dict[str, Any]:
        window = tuple(req.window) if req.window else None
        out: Dict[str, Any] = {}
        for axis in range(W.m):
            op = cross_commutator(W, axis, axis)
            spectra = ShellSpectra(op, req.max_degree, req.threads)
            verdicts = {}
            for p in req.ps:
                try:
                    verdicts[repr(float(p))] = verdict(spectra, p, margin=req.margin, window=window).to_dict()
                except SchattenError as e:
                    verdicts[repr(float(p))] = {"verdict": "inconclusive", "error": str(e)}
            out[op.label] = verdicts
        return out

    def _decomposition(self, W: WeightSet, S: VectorSubmodule, req: ReportRequest) -> Dict[str, Any]:
        window = tuple(req.window) if req.window else None
        tree = full_reduction(S)
        report = audit(
            S, tree, W, max_degree=req.max_degree, margin=req.margin, window=window, threads=req.threads
        )
        return {"tree": tree.to_dict(), "audit": report.to_dict()}

    def run(
        self,
        W: WeightSet,
        S: Optional[VectorSubmodule] = None,
        request: Optional[ReportRequest] = None,
    ) -> ReportResult:
        """
        Execute the full diagnostic workflow.

        Args:
            W: Weight set
            S: Submodule; without one only the ambient steps run
            request: Orders and verdict settings (defaults from configuration)

        Returns:
            ReportResult with status and one section per completed step
        """
        req = request or self.request(W)
        result = ReportResult(status=ReportStatus.SUCCESS)
        result.metadata = {
            "weights": W.to_dict(),
            "submodule": S.to_dict() if S is not None else None,
            "request": req.to_dict(),
        }
        self.logger.info("Starting report")

        attempted = 0
        conditions = self._step("conditions", lambda: self._conditions(W, req), result)
        attempted += 1
        if conditions is not None:
            result.sections["conditions"] = conditions

        ambient = self._step("ambient", lambda: self._ambient(W, req), result)
        attempted += 1
        if ambient is not None:
            result.sections["ambient"] = ambient

        if S is not None:
            decomposition = self._step("decomposition", lambda: self._decomposition(W, S, req), result)
            attempted += 1
            if decomposition is not None:
                result.sections["decomposition"] = decomposition

            samuel: Optional[SamuelReport] = self._step("dimension", lambda: dimension(S), result)
            attempted += 1
            if samuel is not None:
                result.sections["dimension"] = samuel.to_dict()
                qs = req.qs or default_thresholds(samuel.d)
                window = tuple(req.window) if req.window else None
                threshold = self._step(
                    "threshold",
                    lambda: threshold_consistency(
                        S, W, qs, req.max_degree, req.margin, window, req.threads, samuel=samuel
                    ),
                    result,
                )
                attempted += 1
                if threshold is not None:
                    result.sections["threshold"] = threshold.to_dict()

        if not result.errors:
            result.status = ReportStatus.SUCCESS
        elif len(result.errors) == attempted:
            result.status = ReportStatus.FAILED
        else:
            result.status = ReportStatus.PARTIAL
        self.logger.info(f"Report finished: {result.status.value}")
        return result
