"""Scaled Gerschgorin bounds for interval Hessians.

The interval matrix is reduced to a point matrix H (lower diagonal endpoints,
negated magnitudes off the diagonal) and everything else works on H and a
positive scaling vector d.
"""

from collections.abc import Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from scalebb.core.errors import AsymmetricInput, NonpositiveRadius, NonpositiveScaling
from scalebb.core.interval import Interval
from scalebb.core.schemas import (
    AlphaVector,
    FloatArray,
    IntervalMatrix,
    PointMatrix,
    RowValues,
    ScalingConfig,
)


def tolerance(h: PointMatrix, config: ScalingConfig | None = None) -> float:
    """Saturation tolerance tau = rtol * max(1, ||H||_inf)."""
    config = config or ScalingConfig()
    return config.saturation_rtol * max(1.0, h.norm_inf)


def interval_matrix(entries: Sequence[Sequence[Interval]]) -> IntervalMatrix:
    """Pack a nested list of intervals into an IntervalMatrix."""
    lower = [[iv.lo for iv in row] for row in entries]
    upper = [[iv.hi for iv in row] for row in entries]
    return IntervalMatrix(np.array(lower, dtype=float), np.array(upper, dtype=float))


def point_matrix(im: IntervalMatrix) -> PointMatrix:
    if not im.is_symmetric():
        raise AsymmetricInput("interval matrix is not symmetric")
    h = -im.magnitude
    np.fill_diagonal(h, np.diag(im.lower))
    return PointMatrix(h)


def decompose_blocks(h: PointMatrix) -> list[tuple[int, ...]]:
    """Connected components of the off-diagonal sparsity graph, ordered by smallest index."""
    adjacency = h.h != 0
    np.fill_diagonal(adjacency, False)
    count, labels = connected_components(csr_matrix(adjacency), directed=False)
    blocks = [tuple(int(i) for i in np.flatnonzero(labels == label)) for label in range(count)]
    return sorted(blocks)


def is_irreducible(h: PointMatrix) -> bool:
    return len(decompose_blocks(h)) == 1


def positive_vector(
    values: Sequence[float] | FloatArray, error: type[Exception], name: str
) -> FloatArray:
    array = np.asarray(values, dtype=float)
    if array.ndim != 1 or not np.all(array > 0):
        raise error(f"{name} must be a strictly positive vector, got {array.tolist()}")
    return array


def normalize(h: PointMatrix, rad: Sequence[float] | FloatArray) -> PointMatrix:
    """Congruence H'_ij = rad_i rad_j h_ij, reducing the problem to unit radii."""
    r = positive_vector(rad, NonpositiveRadius, "radius")
    _check_length(h, r)
    return PointMatrix(np.outer(r, r) * h.h)


def _check_length(h: PointMatrix, v: FloatArray) -> None:
    if len(v) != h.n:
        raise ValueError(f"vector of length {len(v)} does not match dimension {h.n}")


def _hd_over_d(diagonal: FloatArray, off_diagonal: FloatArray, d: FloatArray) -> FloatArray:
    ratios = d[np.newaxis, :] / d[:, np.newaxis]
    return np.asarray(diagonal + (off_diagonal * ratios).sum(axis=1), dtype=float)


def _off_diagonal(matrix: FloatArray) -> FloatArray:
    off = np.array(matrix, dtype=float)
    np.fill_diagonal(off, 0.0)
    return off


def row_values(h: PointMatrix, d: Sequence[float] | FloatArray) -> RowValues:
    scaling = positive_vector(d, NonpositiveScaling, "scaling vector")
    _check_length(h, scaling)
    return RowValues(
        hd_over_d=_hd_over_d(np.diag(h.h), _off_diagonal(h.h), scaling),
        hd=h.h @ scaling,
    )


def saturation(h: PointMatrix, d: Sequence[float] | FloatArray) -> FloatArray:
    """Scale-free row saturation Hd / max(d); compared against +-tau everywhere."""
    scaling = positive_vector(d, NonpositiveScaling, "scaling vector")
    _check_length(h, scaling)
    return np.asarray(h.h @ scaling / scaling.max(), dtype=float)


def _alpha_from(values: FloatArray) -> AlphaVector:
    return AlphaVector(np.maximum(0.0, -0.5 * values) + 0.0)


def alpha(h: PointMatrix, d: Sequence[float] | FloatArray) -> AlphaVector:
    return _alpha_from(row_values(h, d).hd_over_d)


def alpha_from_interval(im: IntervalMatrix, d: Sequence[float] | FloatArray) -> AlphaVector:
    """Alpha computed directly from the interval matrix with the magnitudes |h_ij|."""
    scaling = positive_vector(d, NonpositiveScaling, "scaling vector")
    if len(scaling) != im.n:
        raise ValueError(f"vector of length {len(scaling)} does not match dimension {im.n}")
    return _alpha_from(_hd_over_d(np.diag(im.lower), -_off_diagonal(im.magnitude), scaling))


def separation_objective(alpha_vector: AlphaVector, rad: Sequence[float] | FloatArray) -> float:
    """Maximum distance between f and its underestimator, sum alpha_i rad_i^2."""
    r = np.asarray(rad, dtype=float)
    if len(r) != len(alpha_vector):
        raise ValueError(
            f"radius of length {len(r)} does not match alpha of length {len(alpha_vector)}"
        )
    return float(np.dot(alpha_vector.values, r**2))


def _radius_or_ones(h: PointMatrix, rad: Sequence[float] | FloatArray | None) -> FloatArray:
    if rad is None:
        return np.ones(h.n)
    r = np.asarray(rad, dtype=float)
    _check_length(h, r)
    return r


def deficit_objective(
    h: PointMatrix,
    d: Sequence[float] | FloatArray,
    rad: Sequence[float] | FloatArray | None = None,
) -> float:
    """D(d) = sum rad_i^2 deficit_i; rad defaults to all ones."""
    r = _radius_or_ones(h, rad)
    return float(np.dot(row_values(h, d).deficit, r**2))


def alpha_objective(
    h: PointMatrix,
    d: Sequence[float] | FloatArray,
    rad: Sequence[float] | FloatArray | None = None,
) -> float:
    """J(d) = D(d) / 2, the objective of the auxiliary scaling problem."""
    return deficit_objective(h, d, rad) / 2


def psd_certificate(
    h: PointMatrix,
    alpha_vector: AlphaVector,
    d: Sequence[float] | FloatArray,
    tol: float = 0.0,
) -> bool:
    """Scaled Gerschgorin test that every matrix in H + 2 diag(alpha) is PSD."""
    slack = row_values(h, d).hd_over_d + 2 * alpha_vector.values
    return bool(np.all(slack >= -tol))
