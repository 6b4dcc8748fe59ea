"""
Pytest configuration and shared fixtures.
"""
import sys
from pathlib import Path

# Add src directory to path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root / "src"))

import numpy as np
import pytest

from lattice import MultiIndex, ShiftInvariantSet
from submodule import Generator, VectorSubmodule
from weights import WeightSet


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    """Keep ESSNORM_* variables from the shell out of the tests."""
    for name in (
        "ESSNORM_THREADS",
        "ESSNORM_SEED",
        "ESSNORM_RANK_CUTOFF",
        "ESSNORM_MARGIN",
        "ESSNORM_MAX_DEGREE",
        "ESSNORM_LOG_DIR",
        "ESSNORM_LOG_LEVEL",
    ):
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def da2():
    """Drury-Arveson weights in two variables."""
    return WeightSet(m=2, family="drury_arveson")


@pytest.fixture
def da3():
    """Drury-Arveson weights in three variables."""
    return WeightSet(m=3, family="drury_arveson")


@pytest.fixture
def staircase():
    """B((2,0),(0,3)): cofinite, corner at the origin."""
    return ShiftInvariantSet(2, [MultiIndex((2, 0)), MultiIndex((0, 3))])


@pytest.fixture
def single_cone():
    """B((2,3)): one generator, quotient of dimension one."""
    return ShiftInvariantSet(2, [MultiIndex((2, 3))])


@pytest.fixture
def staircase_submodule(staircase):
    """Scalar submodule generated by the staircase monomials."""
    return VectorSubmodule.scalar(staircase)


@pytest.fixture
def vector_submodule():
    """Multiplicity-two submodule whose fiber grows from a line to the plane along z2."""
    return VectorSubmodule(
        m=2,
        k=2,
        generators=[
            Generator(MultiIndex((0, 2)), (1.0, 0.0)),
            Generator(MultiIndex((0, 0)), (0.0, 1.0)),
        ],
    )


@pytest.fixture
def rng():
    """Seeded generator for randomized checks."""
    return np.random.default_rng(7)
