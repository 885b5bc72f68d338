"""Random point matrices for the iteration-count experiment, plus named instances."""

from fractions import Fraction

import numpy as np
from numpy.typing import NDArray

from scalebb.core.schemas import Family, PointMatrix

# entries are drawn as integers in [-ENTRY_BOUND, ENTRY_BOUND]
ENTRY_BOUND = 10


def trial_rng(seed: int, t: int) -> np.random.Generator:
    """Independent generator for trial ``t``, derived from (seed, t) alone."""
    return np.random.default_rng([seed, t])


def _draw(rng: np.random.Generator, size: int | tuple[int, int]) -> NDArray[np.int64]:
    return rng.integers(-ENTRY_BOUND, ENTRY_BOUND + 1, size=size)


def gen_matrix(n: int, family: Family, rng: np.random.Generator) -> PointMatrix:
    """Draw a symmetric integer matrix and reduce its off-diagonal to -|h_ij|.

    general: all entries drawn, upper triangle mirrored, diagonal increased by n.
    tridiagonal: only the band |i - j| <= 1 is drawn, no diagonal increment.
    """
    if n < 2:
        raise ValueError(f"random matrices need n >= 2, got {n}")
    if family is Family.GENERAL:
        a = _draw(rng, (n, n))
        upper = np.triu(a, 1)
        off = -np.abs(upper + upper.T)
        h = off + np.diag(np.diag(a) + n)
    else:
        diagonal = _draw(rng, n)
        band = -np.abs(_draw(rng, n - 1))
        h = np.diag(diagonal) + np.diag(band, 1) + np.diag(band, -1)
    return PointMatrix(h.astype(float))


def exlin_matrix(n: int) -> PointMatrix:
    """Tridiagonal instance on which Local Improvement II needs n - 1 iterations.

    h_11 = 2, h_nn = 0, h_kk = 4 (4^(k-1) - 1) / (2^(2k-1) - 1) in between,
    and -1 on the first off-diagonals.
    """
    if n < 2:
        raise ValueError(f"exlin_matrix needs n >= 2, got {n}")
    diagonal = [2.0] + [
        float(Fraction(4 * (4 ** (k - 1) - 1), 2 ** (2 * k - 1) - 1)) for k in range(2, n)
    ]
    diagonal.append(0.0)
    ones = -np.ones(n - 1)
    return PointMatrix(np.diag(diagonal) + np.diag(ones, 1) + np.diag(ones, -1))


def exoscil_matrix() -> PointMatrix:
    """3x3 instance on which Local Improvement I converges only geometrically."""
    return PointMatrix(np.array([[8.0, -1.0, -6.0], [-1.0, -2.0, 0.0], [-6.0, 0.0, 6.0]]))
