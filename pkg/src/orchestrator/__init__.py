"""
Orchestrator package for essnorm.
"""
from orchestrator.main import ReportOrchestrator, default_orders, default_thresholds
from orchestrator.domain import REPORT_STEPS, ReportRequest, ReportResult, ReportStatus

__all__ = [
    "ReportOrchestrator",
    "default_orders",
    "default_thresholds",
    "REPORT_STEPS",
    "ReportRequest",
    "ReportResult",
    "ReportStatus",
]
