"""
Tests for the report orchestrator.
"""
import json
from unittest.mock import patch

import pytest

from config import Config
from orchestrator import (
    ReportOrchestrator,
    ReportRequest,
    ReportResult,
    ReportStatus,
    default_orders,
    default_thresholds,
)
from samuel import SamuelError
from submodule import VectorSubmodule


@pytest.fixture
def orchestrator():
    return ReportOrchestrator(Config())


@pytest.fixture
def small_request():
    return ReportRequest(ps=[3.0], qs=[0.8, 2.0], max_degree=60)


@pytest.mark.unit
class TestDefaults:
    """Test default orders."""

    def test_default_orders(self):
        """Test one order just above m."""
        assert default_orders(2) == [3.0]

    @pytest.mark.parametrize(
        "d,expected",
        [(1, [0.8, 1.5, 2.0, 3.0]), (0, [0.5, 1.0, 2.0]), (-1, [1.0])],
    )
    def test_default_thresholds(self, d, expected):
        """Test orders around d with nonpositive ones dropped."""
        assert default_thresholds(d) == pytest.approx(expected)

    def test_request_from_environment(self, monkeypatch, da2):
        """Test that configuration fills the request and overrides win."""
        monkeypatch.setenv("ESSNORM_MAX_DEGREE", "80")
        monkeypatch.setenv("ESSNORM_THREADS", "3")
        orchestrator = ReportOrchestrator(Config())
        req = orchestrator.request(da2, ps=[2.5], margin=None)
        assert req.max_degree == 80
        assert req.threads == 3
        assert req.ps == [2.5]
        assert req.margin == 0.1
        assert "threads" not in req.to_dict()


@pytest.mark.unit
class TestReportOrchestrator:
    """Test the report workflow."""

    def test_initialization(self):
        """Test orchestrator initialization from the environment."""
        orchestrator = ReportOrchestrator()
        assert orchestrator.config.max_degree == 600
        assert hasattr(orchestrator, "condition_evaluator")

    def test_full_report(self, orchestrator, small_request, da2, single_cone):
        """Test that every step contributes a section."""
        S = VectorSubmodule.scalar(single_cone)
        result = orchestrator.run(da2, S, small_request)
        assert result.status is ReportStatus.SUCCESS
        assert sorted(result.sections) == ["ambient", "conditions", "decomposition", "dimension", "threshold"]
        assert result.sections["dimension"]["d"] == 1
        assert result.sections["conditions"]["star"]["verdict"] == "holds"
        assert result.sections["ambient"]["[Z1*,Z1]"]["3.0"]["verdict"] == "converged"
        assert [c["q"] for c in result.sections["threshold"]["checks"]] == [0.8, 2.0]
        assert result.metadata["request"]["max_degree"] == 60

    def test_weights_only(self, orchestrator, small_request, da2):
        """Test that without a submodule only the ambient steps run."""
        result = orchestrator.run(da2, request=small_request)
        assert result.status is ReportStatus.SUCCESS
        assert sorted(result.sections) == ["ambient", "conditions"]
        assert result.metadata["submodule"] is None

    @patch("orchestrator.main.dimension")
    def test_failed_step_gives_partial(self, mock_dimension, orchestrator, small_request, da2, single_cone):
        """Test that a failing dimension step skips the threshold and reports partial."""
        mock_dimension.side_effect = SamuelError("boom")
        result = orchestrator.run(da2, VectorSubmodule.scalar(single_cone), small_request)
        assert result.status is ReportStatus.PARTIAL
        assert result.errors == {"dimension": "dimension failed: boom"}
        assert "threshold" not in result.sections
        assert "decomposition" in result.sections

    @patch("orchestrator.main.cross_commutator")
    def test_every_step_failing(self, mock_commutator, small_request, da2):
        """Test that failures in every attempted step report failed."""
        mock_commutator.side_effect = RuntimeError("no operator")
        orchestrator = ReportOrchestrator(Config())
        with patch.object(orchestrator.condition_evaluator, "check", side_effect=ValueError("bad")):
            result = orchestrator.run(da2, request=small_request)
        assert result.status is ReportStatus.FAILED
        assert result.errors["conditions"] == "conditions failed: bad"
        assert result.errors["ambient"] == "ambient failed with exception: no operator"
        assert result.sections == {}

    def test_json_is_stable(self, orchestrator, small_request, da2):
        """Test that equal runs serialize to identical sorted JSON."""
        first = orchestrator.run(da2, request=small_request).to_json()
        second = orchestrator.run(da2, request=small_request).to_json()
        assert first == second
        assert first.endswith("\n")
        assert list(json.loads(first)) == ["errors", "metadata", "sections", "status"]


@pytest.mark.unit
class TestReportResult:
    """Test result serialization."""

    def test_round_trip(self):
        """Test to_dict/from_dict."""
        result = ReportResult(
            status=ReportStatus.PARTIAL,
            sections={"dimension": {"d": 1}},
            errors={"threshold": "threshold failed: x"},
        )
        assert ReportResult.from_dict(result.to_dict()) == result

    def test_missing_status_defaults_to_failed(self):
        """Test that an empty payload reads as failed."""
        assert ReportResult.from_dict({}).status is ReportStatus.FAILED
