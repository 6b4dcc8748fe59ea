"""
Integration tests: closed-form lattice operators against dense truncations.

Twenty seeded random submodules, every built-in weight family, m <= 3 and
k <= 3. Each draw checks shifts, commutators, restrictions and edge Grams
on the ambient module, the submodule and the quotient.
"""
import numpy as np
import pytest

from lattice import LatticeRegion, LatticeSlice
from oracle import build, compare
from shiftops import (
    AmbientDomain,
    QuotientDomain,
    SubmoduleDomain,
    cross_commutator,
    edge_operator_gram,
    materialize,
    restrict,
    shift_op,
)
from submodule import random_submodule
from weights import BUILTIN_FAMILIES, WeightSet

TOLERANCE = 1e-12
SEEDS = list(range(20))


def draw(seed):
    """Weights, submodule and truncation depth for one seed."""
    rng = np.random.default_rng(seed)
    m = int(rng.integers(2, 4))
    k = int(rng.integers(1, 4))
    family = BUILTIN_FAMILIES[seed % len(BUILTIN_FAMILIES)]
    S = random_submodule(rng, m, k, max_generators=3, box=3)
    max_degree = 10 if m == 2 else 8
    return WeightSet(m=m, family=family), S, max_degree


def domains(S):
    return {
        "ambient": AmbientDomain(S.m, S.k),
        "submodule": SubmoduleDomain(S),
        "quotient": QuotientDomain(S),
    }


@pytest.mark.integration
@pytest.mark.slow
class TestOracleEquivalence:
    """Closed forms agree with literal matrix products to 1e-12."""

    @pytest.mark.parametrize("seed", SEEDS)
    def test_shifts_and_commutators(self, seed):
        """Test every shift and every [Z_i*, Z_j] on all three modules."""
        W, S, N = draw(seed)
        for kind, domain in domains(S).items():
            trunc = build(W, kind, None if kind == "ambient" else S, N, k=S.k)
            for i in range(W.m):
                assert compare(shift_op(W, i, domain), trunc) <= TOLERANCE, (kind, i)
                for j in range(W.m):
                    assert compare(cross_commutator(W, i, j, domain), trunc) <= TOLERANCE, (kind, i, j)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_restrictions_and_edge_grams(self, seed):
        """Test cone-restricted commutators and slice edge Grams on all three modules."""
        W, S, N = draw(seed)
        apex = (1,) * W.m
        for kind, domain in domains(S).items():
            trunc = build(W, kind, None if kind == "ambient" else S, N, k=S.k)
            op = restrict(cross_commutator(W, 0, W.m - 1, domain), LatticeRegion.cone(apex))
            assert compare(op, trunc) <= TOLERANCE, kind
            for axis in range(W.m):
                gram = edge_operator_gram(W, axis, LatticeSlice(axis, 1), domain)
                assert compare(gram, trunc) <= TOLERANCE, (kind, axis)

    @pytest.mark.parametrize("seed", SEEDS)
    def test_adjoints(self, seed):
        """Test that the closed-form adjoint is the conjugate transpose."""
        W, S, N = draw(seed)
        for domain in domains(S).values():
            for i in range(W.m):
                op = shift_op(W, i, domain)
                np.testing.assert_allclose(
                    materialize(op.adjoint(), N), materialize(op, N).conj().T, atol=TOLERANCE
                )
            op = cross_commutator(W, 0, W.m - 1, domain)
            np.testing.assert_allclose(
                materialize(op.adjoint(), N), materialize(op, N).conj().T, atol=TOLERANCE
            )
