"""
Tests for Hilbert-Samuel counting and the quotient threshold check.
"""
from fractions import Fraction

import pytest

from decomp import DecompositionError, full_reduction
from lattice import closure
from samuel import counting
from samuel import (
    NoStabilizationError,
    SamuelError,
    block_census,
    counting_function,
    dimension,
    encode_fraction,
    fit_polynomial,
    quotient_count,
    quotient_shell_count,
    threshold_consistency,
)
from submodule import VectorSubmodule
from weights import WeightSet


def scalar(*gens, m=None):
    return VectorSubmodule.scalar(closure(list(gens), m=m))


@pytest.mark.unit
class TestCounting:
    """Test exact quotient counts."""

    def test_cone_shell_counts(self, single_cone):
        """Test that B((2,3)) leaves five points per shell from shell 4 on."""
        counts = counting_function(VectorSubmodule.scalar(single_cone), 12)
        assert counts.shell_counts == (1, 2, 3, 4) + (5,) * 9
        assert counts.cumulative[-1] == 5 * 12 - 5
        assert counts.max_degree == 12

    def test_vector_quotient(self, vector_submodule):
        """Test one missing direction on the strips z2=0 and z2=1."""
        assert quotient_shell_count(vector_submodule, 0) == 1
        assert [quotient_shell_count(vector_submodule, n) for n in range(1, 6)] == [2] * 5

    def test_zero_submodule(self):
        """Test that the zero submodule leaves the whole shell."""
        S = VectorSubmodule(m=3, k=2)
        assert quotient_shell_count(S, 4) == 2 * 15
        assert quotient_count(S, 2) == 2 * (1 + 3 + 6)

    def test_negative_degree(self, staircase_submodule):
        """Test that negative shells raise SamuelError."""
        with pytest.raises(SamuelError):
            quotient_count(staircase_submodule, -1)


@pytest.mark.unit
class TestFitPolynomial:
    """Test exact interpolation by forward differences."""

    def test_quadratic(self):
        """Test n^2 sampled from n = 3."""
        assert fit_polynomial(3, [9, 16, 25, 36, 49], 2) == [0, 0, 1]

    def test_rational_coefficients(self):
        """Test the triangular numbers (n+1)(n+2)/2."""
        values = [(n + 1) * (n + 2) // 2 for n in range(10, 15)]
        assert fit_polynomial(10, values, 2) == [Fraction(1), Fraction(3, 2), Fraction(1, 2)]

    def test_not_polynomial(self):
        """Test that a sample off the polynomial gives None."""
        assert fit_polynomial(0, [1, 2, 4, 8, 16], 2) is None

    def test_too_few_samples(self):
        """Test that degree p needs p + 2 samples."""
        with pytest.raises(SamuelError):
            fit_polynomial(0, [1, 2, 3], 2)

    def test_encode_fraction(self):
        """Test integers stay integers and other rationals become strings."""
        assert encode_fraction(Fraction(4, 2)) == 2
        assert encode_fraction(Fraction(3, 2)) == "3/2"


@pytest.mark.unit
class TestDimension:
    """Test the Hilbert-Samuel dimension."""

    def test_cone(self, single_cone):
        """Test d = 1 with counting polynomial 5n - 5 from shell 4."""
        report = dimension(VectorSubmodule.scalar(single_cone))
        assert report.d == 1
        assert report.polynomial == (Fraction(-5), Fraction(5))
        assert report.stabilization_shell == 4
        assert report.value(10) == 45
        assert report.agrees

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_zero_submodule_has_full_dimension(self, m):
        """Test d = m when nothing is divided out."""
        report = dimension(VectorSubmodule(m=m, k=1))
        assert report.d == m
        assert report.census.dimension == m

    def test_maximal_ideal(self):
        """Test that a quotient of one point has d = 0."""
        report = dimension(scalar((1, 0), (0, 1)))
        assert report.d == 0
        assert report.polynomial == (Fraction(1),)

    def test_whole_module(self):
        """Test d = -1 for the zero quotient."""
        report = dimension(scalar((0, 0)))
        assert report.d == -1
        assert report.polynomial == ()
        assert report.agrees

    def test_three_variable_line(self):
        """Test that B((1,0,0),(0,1,0)) leaves the z3 axis."""
        report = dimension(scalar((1, 0, 0), (0, 1, 0)))
        assert report.d == 1
        assert report.census.free_sets == ((2,),)

    def test_vector_submodule(self, vector_submodule):
        """Test d = 1 for the two-strip quotient."""
        assert dimension(vector_submodule).d == 1

    def test_cap_too_small(self, single_cone):
        """Test that a tiny cap cannot hold three windows."""
        with pytest.raises(NoStabilizationError):
            dimension(VectorSubmodule.scalar(single_cone), max_degree=5)

    def test_to_dict(self):
        """Test rational coefficients and the block summary in JSON."""
        data = dimension(VectorSubmodule(m=2, k=1)).to_dict()
        assert data["d"] == 2
        assert data["polynomial"] == [1, "3/2", "1/2"]
        assert data["blocks"]["free_sets"][0] == [1, 2]
        assert data["blocks"]["min_codim"] == 0
        assert data["agree"] is True


@pytest.mark.unit
class TestBlockCensus:
    """Test the coordinate-set cross-check."""

    def test_cone(self, single_cone):
        """Test that each axis alone stays infinite."""
        census = block_census(VectorSubmodule.scalar(single_cone))
        assert census.free_sets == ((0,), (1,))
        assert census.min_codim == 1
        assert census.dimension == 1

    def test_full_module(self):
        """Test an empty census with a zero quotient."""
        census = block_census(scalar((0, 0)))
        assert census.free_sets == ()
        assert census.min_codim is None
        assert census.dimension == -1

    def test_point_quotient(self):
        """Test an empty census with a nonzero quotient."""
        census = block_census(scalar((1, 0), (0, 1)))
        assert census.dimension == 0

    def test_three_coordinate_slabs(self):
        """Test that B((1,1,1)) leaves one quotient slab per frozen axis."""
        census = block_census(scalar((1, 1, 1)))
        assert census.free_sets == ((0, 1), (0, 2), (1, 2))
        assert census.dimension == 2
        assert census.to_dict()["source"] == "decomposition"

    def test_read_from_block_tree(self, single_cone, mocker):
        """Test that the census walks the full reduction of the submodule."""
        spy = mocker.spy(counting, "full_reduction")
        S = VectorSubmodule.scalar(single_cone)
        block_census(S)
        spy.assert_called_once_with(S)

    def test_wrong_tree_is_caught(self, single_cone, mocker):
        """Test that a reduction of another submodule breaks the agreement."""
        whole = full_reduction(scalar((0, 0)))
        mocker.patch("samuel.counting.full_reduction", return_value=whole)
        report = dimension(VectorSubmodule.scalar(single_cone))
        assert report.d == 1
        assert report.census.dimension == -1
        assert not report.agrees

    def test_fiber_scan_fallback(self, single_cone, mocker):
        """Test the fiber scan when no reduction can be built."""
        mocker.patch("samuel.counting.full_reduction", side_effect=DecompositionError("no reduction"))
        census = block_census(VectorSubmodule.scalar(single_cone))
        assert census.source == "fiber-scan"
        assert census.free_sets == ((0,), (1,))
        assert census.dimension == 1


@pytest.mark.unit
class TestThreshold:
    """Test quotient commutators against q > d."""

    def test_cone_threshold(self, single_cone, da2):
        """Test convergence above d = 1 and divergence below it."""
        S = VectorSubmodule.scalar(single_cone)
        report = threshold_consistency(S, da2, [0.8, 1.5, 2.0, 3.0], max_degree=200)
        assert report.d == 1
        verdicts = {c.q: c.verdict for c in report.checks}
        assert verdicts[1.5] == "converged"
        assert verdicts[2.0] == "converged"
        assert verdicts[3.0] == "converged"
        assert verdicts[0.8] != "converged"
        assert report.consistent
        assert report.caveats == []

    def test_orders_near_dimension_are_not_scored(self, single_cone, da2):
        """Test that q within the margin of d has no agreement flag."""
        S = VectorSubmodule.scalar(single_cone)
        report = threshold_consistency(S, da2, [1.05], max_degree=60)
        assert report.checks[0].agrees is None
        assert report.checks[0].expected == "converged"

    def test_caveat_for_other_weights(self, single_cone):
        """Test that weights outside the ball-type families are flagged."""
        S = VectorSubmodule.scalar(single_cone)
        W = WeightSet(m=2, family="paper_literal")
        report = threshold_consistency(S, W, [3.0], max_degree=40)
        assert "paper_literal" in report.caveats[0]

    def test_precomputed_dimension_is_used(self, single_cone, da2, mocker):
        """Test that a supplied report skips recounting."""
        S = VectorSubmodule.scalar(single_cone)
        samuel = dimension(S)
        spy = mocker.patch("samuel.threshold.dimension")
        report = threshold_consistency(S, da2, [3.0], max_degree=40, samuel=samuel)
        spy.assert_not_called()
        assert report.d == 1
