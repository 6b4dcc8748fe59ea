"""
Integration tests for Schatten thresholds on the closed-form weight families.

These run deep shell ranges and take tens of seconds.
"""
import numpy as np
import pytest

from lattice import LatticeSlice
from samuel import threshold_consistency
from schatten import ShellSpectra, Verdict, fit_decay, verdict
from shiftops import cross_commutator, edge_operator_gram
from submodule import VectorSubmodule
from weights import WeightSet


@pytest.fixture(scope="module")
def da2_spectra():
    """[Z1*, Z1] for m=2 up to shell 1000."""
    op = cross_commutator(WeightSet(m=2, family="drury_arveson"), 0, 0)
    return ShellSpectra(op, 1000, threads=4)


@pytest.fixture(scope="module")
def da3_spectra():
    """[Z1*, Z1] for m=3 up to shell 400."""
    op = cross_commutator(WeightSet(m=3, family="drury_arveson"), 0, 0)
    return ShellSpectra(op, 400, threads=4)


@pytest.mark.integration
@pytest.mark.slow
class TestDruryArvesonThreshold:
    """Self-commutators lie in the Schatten p-class exactly for p > m."""

    @pytest.mark.parametrize("p", [2.5, 3.0, 4.0])
    def test_two_variable_slope(self, da2_spectra, p):
        """Test slope m - 1 - p over shells 100..1000."""
        fit = fit_decay(da2_spectra.series(p), (100, 1000))
        assert fit.slope == pytest.approx(1.0 - p, abs=0.15)

    @pytest.mark.parametrize("p", [2.5, 3.0, 4.0])
    def test_two_variable_converged(self, da2_spectra, p):
        """Test converged verdicts above the threshold."""
        assert verdict(da2_spectra, p, window=(100, 1000)).verdict is Verdict.CONVERGED

    def test_two_variable_below_threshold(self, da2_spectra):
        """Test that p = 1.5 is not converged."""
        assert verdict(da2_spectra, 1.5, window=(100, 1000)).verdict is not Verdict.CONVERGED

    def test_boundary_order_is_not_converged(self, da2_spectra):
        """Test that p = m sits on the log-corrected boundary."""
        assert verdict(da2_spectra, 2.0, window=(100, 1000)).verdict is not Verdict.CONVERGED

    @pytest.mark.parametrize("p", [3.5, 4.0])
    def test_three_variables(self, da3_spectra, p):
        """Test slope m - 1 - p and convergence for m = 3 over shells 80..400."""
        fit = fit_decay(da3_spectra.series(p), (80, 400))
        assert fit.slope == pytest.approx(2.0 - p, abs=0.15)
        assert verdict(da3_spectra, p, window=(80, 400)).verdict is Verdict.CONVERGED


@pytest.mark.integration
@pytest.mark.slow
class TestEdgeDecay:
    """Edge Grams decay like 1/n for ball-type weights and not at all for isometries."""

    def test_drury_arveson_edge_gram(self):
        """Test the exact diagonal and slope -1 over shells 50..500."""
        op = edge_operator_gram(WeightSet(m=2, family="drury_arveson"), 0, LatticeSlice(0, 0))
        diagonal = np.array([op.value((0, n)) for n in range(501)])
        np.testing.assert_allclose(diagonal, 1.0 / (np.arange(501) + 1.0), atol=1e-12)
        fit = fit_decay(ShellSpectra(op, 500).series(1.0), (50, 500))
        assert fit.slope == pytest.approx(-1.0, abs=0.05)

    def test_unweighted_edge_gram(self):
        """Test the non-decaying negative control."""
        op = edge_operator_gram(WeightSet(m=2, family="unweighted"), 0, LatticeSlice(0, 0))
        fit = fit_decay(ShellSpectra(op, 500).series(1.0), (50, 500))
        assert fit.slope >= -0.01


@pytest.mark.integration
@pytest.mark.slow
class TestQuotientThreshold:
    """Quotient commutators converge exactly for q > d."""

    def test_cone_quotient(self, single_cone):
        """Test B((2,3)) with d = 1 at the default depth."""
        S = VectorSubmodule.scalar(single_cone)
        W = WeightSet(m=2, family="drury_arveson")
        report = threshold_consistency(S, W, [0.8, 1.5, 2.0, 3.0], max_degree=600)
        verdicts = {c.q: c.verdict for c in report.checks}
        assert report.d == 1
        assert all(verdicts[q] == "converged" for q in (1.5, 2.0, 3.0))
        assert verdicts[0.8] != "converged"
        assert report.consistent
