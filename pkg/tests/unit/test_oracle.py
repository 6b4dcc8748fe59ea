"""
Tests for the dense truncation oracle.
"""
import io

import numpy as np
import pytest

from lattice import LatticeRegion, LatticeSlice
from oracle import (
    OracleError,
    OracleSizeError,
    build,
    compare,
    compare_operator,
    compare_shell_spectra,
    dense_block_split,
    dense_operator,
    shift_matrices,
    write_matrix_csv,
)
from shiftops import (
    QuotientDomain,
    SubmoduleDomain,
    block_split,
    cross_commutator,
    edge_operator_gram,
    restrict,
    shift_op,
)
from weights import BUILTIN_FAMILIES, WeightSet


@pytest.mark.unit
class TestBuild:
    """Test dense truncations."""

    def test_unilateral_shift(self):
        """Test that the unweighted m=1 shift is the subdiagonal of ones."""
        trunc = build(WeightSet(m=1, family="unweighted"), max_degree=4)
        assert trunc.size == 5
        np.testing.assert_array_equal(trunc.shift(0), np.eye(5, k=-1))

    def test_drury_arveson_shift(self, da2):
        """Test the size and one entry of Z1 for m=2, N=3."""
        trunc = build(da2, max_degree=3)
        assert trunc.size == 10
        rows = [tuple(int(v) for v in p) for p in trunc.points]
        z1 = trunc.shift(0)
        assert z1[rows.index((1, 0)), rows.index((0, 0))] == pytest.approx(1.0, rel=1e-14)
        assert z1[rows.index((2, 1)), rows.index((1, 1))] == pytest.approx(np.sqrt(2 / 3), rel=1e-14)

    def test_basis_order(self, da2):
        """Test (degree, lex) ordering of lattice points."""
        trunc = build(da2, max_degree=2)
        assert [tuple(p) for p in trunc.points.tolist()] == [
            (0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0),
        ]

    def test_quotient_fibers(self, da2, vector_submodule):
        """Test frame sizes of the quotient by the vector example."""
        trunc = build(da2, "quotient", vector_submodule, max_degree=3)
        dims = dict(zip(map(tuple, trunc.points.tolist()), trunc.fiber_dims()))
        assert dims[(0, 0)] == 1
        assert dims[(3, 0)] == 1
        assert dims[(0, 2)] == 0
        assert [name for name, _ in shift_matrices(trunc)] == ["N1", "N2"]

    def test_submodule_and_quotient_split_the_ambient(self, da2, vector_submodule):
        """Test that the two embeddings are orthogonal and fill every fiber."""
        sub = build(da2, "submodule", vector_submodule, max_degree=4)
        quo = build(da2, "quotient", vector_submodule, max_degree=4)
        assert sub.size + quo.size == 2 * len(sub.points)
        np.testing.assert_allclose(sub.embedding.T @ quo.embedding, 0.0, atol=1e-14)

    @pytest.mark.parametrize(
        "m,N",
        [(4, 2), (2, 17)],
    )
    def test_size_guard(self, m, N):
        """Test that oversized truncations are refused."""
        with pytest.raises(OracleSizeError):
            build(WeightSet(m=m, family="drury_arveson"), max_degree=N)

    def test_invalid_requests(self, da2, staircase_submodule):
        """Test unknown kinds and a missing submodule."""
        with pytest.raises(OracleError):
            build(da2, "mystery", max_degree=2)
        with pytest.raises(OracleError):
            build(da2, "quotient", max_degree=2)
        with pytest.raises(OracleError):
            build(WeightSet(m=3, family="drury_arveson"), "quotient", staircase_submodule, 2)


@pytest.mark.unit
class TestCompare:
    """Test closed forms against literal matrix products."""

    @pytest.mark.parametrize("family", BUILTIN_FAMILIES)
    def test_ambient_commutators(self, family):
        """Test every [Z_i*, Z_j] for m=2 up to N=10."""
        W = WeightSet(m=2, family=family)
        trunc = build(W, max_degree=10)
        for i in range(2):
            for j in range(2):
                assert compare(cross_commutator(W, i, j), trunc) <= 1e-12

    def test_three_variables(self, da3):
        """Test a cross commutator for m=3."""
        trunc = build(da3, max_degree=6)
        assert compare(cross_commutator(da3, 0, 2), trunc) <= 1e-12

    def test_quotient_commutators(self, da2, vector_submodule):
        """Test compressed commutators on a k=2 quotient."""
        domain = QuotientDomain(vector_submodule)
        trunc = build(da2, "quotient", vector_submodule, max_degree=8)
        for i in range(2):
            for j in range(2):
                assert compare(cross_commutator(da2, i, j, domain), trunc) <= 1e-12

    def test_submodule_shift(self, da2, staircase_submodule):
        """Test the restricted shift on a scalar submodule."""
        trunc = build(da2, "submodule", staircase_submodule, max_degree=8)
        assert compare(shift_op(da2, 1, SubmoduleDomain(staircase_submodule)), trunc) <= 1e-12

    def test_restriction_and_edge_gram(self, da2):
        """Test a cone-restricted commutator and a slice Gram."""
        trunc = build(da2, max_degree=9)
        op = restrict(cross_commutator(da2, 0, 1), LatticeRegion.cone((1, 1)))
        assert compare(op, trunc) <= 1e-12
        assert compare(edge_operator_gram(da2, 0, LatticeSlice(0, 2)), trunc) <= 1e-12

    def test_shell_spectra(self, da2):
        """Test per-shell singular values below the cap."""
        trunc = build(da2, max_degree=8)
        op = cross_commutator(da2, 0, 0)
        for n in range(8):
            assert compare_shell_spectra(op, trunc, n) <= 1e-12
        with pytest.raises(OracleError):
            compare_shell_spectra(op, trunc, 8)

    def test_compare_operator(self, da2):
        """Test the combined comparison and the symmetry flag."""
        result = compare_operator(cross_commutator(da2, 1, 1), build(da2, max_degree=6))
        assert result.deviation <= 1e-12
        assert result.shell_deviation <= 1e-12
        assert result.hermitian is True
        assert result.to_dict()["label"] == "[Z2*,Z2]"

    def test_mismatched_module(self, da2, staircase_submodule):
        """Test that a quotient operator is not compared with an ambient truncation."""
        op = cross_commutator(da2, 0, 0, QuotientDomain(staircase_submodule))
        with pytest.raises(OracleError):
            dense_operator(op, build(da2, max_degree=4))


@pytest.mark.unit
class TestDenseBlockSplit:
    """Test the projector identity from dense matrices."""

    @pytest.mark.parametrize("family", ["drury_arveson", "paper_literal"])
    def test_matches_closed_form(self, family, staircase):
        """Test residues, the vanishing C block and the sizes."""
        W = WeightSet(m=2, family=family)
        dense = dense_block_split(W, 0, staircase, 12)
        closed = block_split(W, 0, staircase, 12)
        assert dense.residue_submodule <= 1e-12
        assert dense.residue_quotient <= 1e-12
        assert dense.c_block_max == 0.0
        assert dense.submodule_size == closed.submodule_size
        assert dense.quotient_size == closed.quotient_size

    def test_degree_too_small(self, da2, staircase):
        """Test that N < 2 is refused."""
        with pytest.raises(OracleError):
            dense_block_split(da2, 0, staircase, 1)


@pytest.mark.unit
class TestMatrixCsv:
    """Test labelled CSV export."""

    def test_ambient_labels(self):
        """Test header and one row of the m=1 shift."""
        trunc = build(WeightSet(m=1, family="unweighted"), max_degree=2)
        handle = io.StringIO()
        write_matrix_csv(trunc, trunc.shift(0), handle)
        lines = handle.getvalue().splitlines()
        assert lines[0] == ",(0)#0,(1)#0,(2)#0"
        assert lines[2] == "(1)#0,1,0,0"

    def test_shape_mismatch(self, da2):
        """Test that a matrix of the wrong size is refused."""
        trunc = build(da2, max_degree=2)
        with pytest.raises(OracleError):
            write_matrix_csv(trunc, np.eye(3), io.StringIO())
