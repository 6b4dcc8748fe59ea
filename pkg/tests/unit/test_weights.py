"""
Tests for weight families, step ratios and condition sweeps.
"""
from math import factorial, sqrt

import numpy as np
import pytest

from lattice import truncation_array
from weights import (
    BUILTIN_FAMILIES,
    WeightError,
    WeightSet,
    WeightUndefinedError,
    check_contractive,
    check_spherical,
)
from utils.errors import SpecError


def factorial_table(m, max_degree):
    """lambda = 1 / sqrt((|alpha| + 1)!) on every point up to max_degree."""
    return {
        tuple(int(v) for v in p): 1.0 / sqrt(factorial(int(p.sum()) + 1))
        for p in truncation_array(m, max_degree)
    }


@pytest.mark.unit
class TestWeightFamilies:
    """Test closed-form weights and ratios."""

    def test_drury_arveson_norm(self, da2):
        """Test lambda at (1,1) against sqrt(1!1!/2!)."""
        assert da2.lam((1, 1)) == pytest.approx(0.7071067811865476, rel=1e-14)
        assert da2.lam((0, 0)) == 1.0

    def test_paper_literal_norm(self):
        """Test the unsquared reading."""
        assert WeightSet(m=2, family="paper_literal").lam((1, 1)) == pytest.approx(0.5, rel=1e-14)

    def test_unweighted(self):
        """Test that every norm and ratio is one."""
        W = WeightSet(m=3, family="unweighted")
        assert W.lam((4, 0, 2)) == 1.0
        assert W.ratio(2, (1, 1, 1)) == 1.0

    def test_drury_arveson_ratios(self, da2):
        """Test step ratios at the origin and at (1,1)."""
        assert da2.ratio(0, (0, 0)) == pytest.approx(1.0, rel=1e-14)
        assert da2.ratio(0, (1, 1)) == pytest.approx(sqrt(2 / 3), rel=1e-14)
        assert da2.step(0, (1, 1)).contractive

    @pytest.mark.parametrize(
        "family,offset",
        [("drury_arveson", 1), ("hardy_ball_like", 2), ("bergman_ball_like", 3)],
    )
    def test_squared_ratio_closed_form(self, family, offset):
        """Test ratio^2 = (alpha_i + 1)/(|alpha| + offset) up to degree 200."""
        W = WeightSet(m=2, family=family)
        points = np.array([[a, 200 - a] for a in range(0, 201, 10)] + [[3, 4], [0, 0]])
        expected = (points[:, 0] + 1.0) / (points.sum(axis=1) + offset)
        np.testing.assert_allclose(W.ratio_array(0, points) ** 2, expected, rtol=1e-12)

    @pytest.mark.parametrize("family", BUILTIN_FAMILIES)
    def test_path_independence(self, family):
        """Test lambda telescopes along two different lattice paths."""
        W = WeightSet(m=2, family=family)
        for alpha in [(3, 5), (17, 23), (40, 0)]:
            a, b = alpha
            first_x = np.prod([W.ratio(0, (t, 0)) for t in range(a)] + [W.ratio(1, (a, t)) for t in range(b)])
            first_y = np.prod([W.ratio(1, (0, t)) for t in range(b)] + [W.ratio(0, (t, b)) for t in range(a)])
            assert first_x == pytest.approx(W.lam(alpha), rel=1e-12)
            assert first_y == pytest.approx(W.lam(alpha), rel=1e-12)

    def test_high_degree_does_not_overflow(self, da2):
        """Test that shells near degree 1000 stay finite and positive."""
        values = da2.lam_array([[500, 500], [1000, 0]])
        assert np.all(np.isfinite(values))
        assert values[0] > 0

    def test_symmetry(self, da2):
        """Test that built-ins are symmetric and custom tables are not."""
        assert da2.is_symmetric
        custom = WeightSet(m=1, family="custom", table={(0,): 1.0})
        assert not custom.is_symmetric

    def test_negative_points_rejected(self, da2):
        """Test that weights refuse points off the lattice."""
        with pytest.raises(WeightError):
            da2.lam_array([[-1, 0]])

    def test_axis_out_of_range(self, da2):
        """Test that ratio_array checks the axis."""
        with pytest.raises(WeightError):
            da2.ratio_array(2, [[0, 0]])


@pytest.mark.unit
class TestCustomWeights:
    """Test custom tables and their extension policies."""

    def test_missing_point_with_error_policy(self):
        """Test that a point outside the table is undefined."""
        W = WeightSet(m=2, family="custom", table={(0, 0): 1.0, (1, 0): 0.5})
        with pytest.raises(WeightUndefinedError, match="weight undefined"):
            W.lam((0, 1))

    def test_product_extend_freezes_edge_ratio(self):
        """Test that ratios beyond the table repeat the edge ratio."""
        table = {(0,): 1.0, (1,): 0.5, (2,): 0.125}
        W = WeightSet(m=1, family="custom", table=table, extend="product_extend")
        assert W.lam((2,)) == pytest.approx(0.125)
        assert W.lam((4,)) == pytest.approx(0.125 * 0.25 * 0.25)
        assert W.ratio(0, (7,)) == pytest.approx(0.25)

    def test_product_extend_needs_full_box(self):
        """Test that a ragged table is refused for product_extend."""
        with pytest.raises(WeightError, match="full box"):
            WeightSet(m=2, family="custom", table={(0, 0): 1.0, (1, 1): 0.5}, extend="product_extend")

    def test_table_needs_origin(self):
        """Test that the origin is required."""
        with pytest.raises(WeightError, match="origin"):
            WeightSet(m=1, family="custom", table={(1,): 1.0})


@pytest.mark.unit
class TestConditionChecks:
    """Test contractivity and spherical-contraction sweeps."""

    def test_drury_arveson_contractive(self, da3):
        """Test that the m=3 Drury-Arveson shifts contract up to degree 60."""
        result = check_contractive(da3, 60)
        assert result.holds
        assert result.verdict == "holds"
        assert result.max_value == pytest.approx(1.0)

    @pytest.mark.parametrize("family", BUILTIN_FAMILIES)
    def test_builtins_contractive(self, family):
        """Test every built-in family up to degree 100."""
        assert check_contractive(WeightSet(m=2, family=family), 100).holds

    def test_constructed_counterexample(self):
        """Test that lambda_(1,0) = 2 violates contractivity at the origin."""
        W = WeightSet(m=2, family="custom", table={(0, 0): 1.0, (1, 0): 2.0, (0, 1): 1.0})
        result = check_contractive(W, 0)
        assert not result.holds
        assert result.witness.entries == (0, 0)
        assert result.axis == 0
        assert result.value == pytest.approx(2.0)
        assert result.to_dict()["verdict"] == "violated"

    def test_two_entry_table_contractive(self):
        """Test that the origin witnesses before the undefined successor (0, 1) is needed."""
        W = WeightSet(m=2, family="custom", table={(0, 0): 1.0, (1, 0): 2.0})
        result = check_contractive(W, 0)
        assert not result.holds
        assert result.witness.entries == (0, 0)
        assert result.axis == 0
        assert result.value == pytest.approx(2.0)
        assert result.to_dict()["witness"] == [0, 0]

    def test_two_entry_table_spherical(self):
        """Test that the defined ratio alone pushes the origin over one."""
        W = WeightSet(m=2, family="custom", table={(0, 0): 1.0, (1, 0): 2.0})
        result = check_spherical(W, 0)
        assert not result.holds
        assert result.witness.entries == (0, 0)
        assert result.value == pytest.approx(4.0)

    def test_undefined_points_are_skipped(self):
        """Test that a contracting table holds with its missing successors counted."""
        W = WeightSet(m=2, family="custom", table={(0, 0): 1.0, (1, 0): 0.5})
        contractive = check_contractive(W, 2)
        spherical = check_spherical(W, 2)
        assert contractive.holds
        assert spherical.holds
        assert contractive.undefined == 6
        assert contractive.to_dict()["undefined"] == 6
        assert spherical.undefined == 6

    def test_drury_arveson_not_spherical(self, da2):
        """Test that the row sum at the origin is m."""
        result = check_spherical(da2, 60)
        assert not result.holds
        assert result.witness.entries == (0, 0)
        assert result.value == pytest.approx(2.0)

    def test_unweighted_not_spherical(self):
        """Test that two isometries sum to 2 at the origin."""
        result = check_spherical(WeightSet(m=2, family="unweighted"), 10)
        assert result.value == pytest.approx(2.0)

    def test_fast_decay_is_spherical(self):
        """Test rapidly decreasing weights pass the spherical sweep."""
        W = WeightSet(m=2, family="custom", table=factorial_table(2, 31))
        result = check_spherical(W, 30)
        assert result.holds
        assert result.max_value == pytest.approx(1.0)


@pytest.mark.unit
class TestWeightJson:
    """Test the JSON weight spec."""

    def test_builtin_round_trip(self, da2):
        """Test a named family."""
        assert WeightSet.from_dict(da2.to_dict()) == da2

    def test_custom_round_trip(self):
        """Test a table with an extension policy."""
        data = {
            "m": 1,
            "family": "custom",
            "table": [{"alpha": [0], "lambda": 1.0}, {"alpha": [1], "lambda": 0.5}],
            "extend": "product_extend",
        }
        W = WeightSet.from_dict(data)
        assert W.to_dict() == data

    @pytest.mark.parametrize(
        "data,field",
        [
            ({"family": "drury_arveson"}, "/m"),
            ({"m": 2, "family": "mystery"}, "/family"),
            ({"m": 1, "family": "custom"}, "/table"),
            ({"m": 1, "family": "custom", "table": [{"alpha": [0], "lambda": -1}]}, "/table/0/lambda"),
            ({"m": 1, "family": "custom", "table": [{"alpha": [0, 0], "lambda": 1}]}, "/table/0/alpha"),
            ({"m": 1, "family": "custom", "table": [{"alpha": [0], "lambda": 1}], "extend": "x"}, "/extend"),
            ({"m": 1, "family": "custom", "table": [{"alpha": [1], "lambda": 1}]}, "/table"),
        ],
    )
    def test_malformed_input_names_field(self, data, field):
        """Test that SpecError carries the offending path."""
        with pytest.raises(SpecError) as info:
            WeightSet.from_dict(data)
        assert info.value.field == field
