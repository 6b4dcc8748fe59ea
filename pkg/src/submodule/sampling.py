"""
Seeded random monomial submodules for sweeps and property checks.
"""
import numpy as np

from lattice import closure
from submodule.domain import Generator, SubmoduleError, VectorSubmodule


def random_submodule(
    rng: np.random.Generator,
    m: int,
    k: int = 1,
    max_generators: int = 3,
    box: int = 4,
) -> VectorSubmodule:
    """
    Draw a nonempty monomial submodule.

    Scalar draws are reduced to their minimal generators; for k > 1 each
    generator gets a random integer vector (never zero), so fibers can
    grow one dimension at a time.

    Args:
        rng: numpy Generator, e.g. ``np.random.default_rng(seed)``
        m: Number of variables
        k: Multiplicity
        max_generators: Upper bound on the number of drawn exponents
        box: Exponents are drawn from ``[0, box]^m``

    Returns:
        VectorSubmodule
    """
    if m < 1 or k < 1 or max_generators < 1 or box < 0:
        raise SubmoduleError(f"invalid sampling parameters m={m}, k={k}, count={max_generators}, box={box}")
    count = int(rng.integers(1, max_generators + 1))
    alphas = rng.integers(0, box + 1, size=(count, m))
    if k == 1:
        return VectorSubmodule.scalar(closure([tuple(int(v) for v in a) for a in alphas], m))

    gens = []
    for alpha in alphas:
        x = rng.integers(-2, 3, size=k)
        while not x.any():
            x = rng.integers(-2, 3, size=k)
        gens.append(Generator(tuple(int(v) for v in alpha), tuple(float(v) for v in x)))
    return VectorSubmodule(m=m, k=k, generators=tuple(gens))
