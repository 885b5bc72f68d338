"""Sampling check that g(x) = f(x) - sum alpha_i (hi_i - x_i)(x_i - lo_i) underestimates f."""

from collections.abc import Sequence

import numpy as np
import structlog

from scalebb.config import settings
from scalebb.core.errors import NegativeAlpha
from scalebb.core.expr import Expr, eval_batch, hessian
from scalebb.core.interval import Box, box_midpoint, box_radius
from scalebb.core.schemas import AlphaVector, FloatArray, UnderestimationReport

logger = structlog.get_logger()


def _alpha_values(alpha: AlphaVector | Sequence[float] | FloatArray, n: int) -> FloatArray:
    values = alpha.values if isinstance(alpha, AlphaVector) else np.asarray(alpha, dtype=float)
    if values.shape != (n,):
        raise ValueError(f"alpha of shape {values.shape} does not match dimension {n}")
    if np.any(values < 0):
        raise NegativeAlpha(f"alpha must be nonnegative, got {values.tolist()}")
    return values


def _min_eigenvalues(f: Expr, points: FloatArray, alpha: FloatArray) -> FloatArray:
    """Smallest eigenvalue of the Hessian of g at every point."""
    n = points.shape[1]
    matrices = np.empty((points.shape[0], n, n))
    for i, row in enumerate(hessian(f, n)):
        for j, entry in enumerate(row):
            matrices[:, i, j] = eval_batch(entry, points)
    matrices += 2 * np.diag(alpha)
    return np.asarray(np.linalg.eigvalsh(matrices)[:, 0], dtype=float)


def underestimation_check(
    f: Expr,
    b: Box,
    alpha: AlphaVector | Sequence[float] | FloatArray,
    samples: int = 10000,
    seed: int = 0,
    slack: float | None = None,
) -> UnderestimationReport:
    """
    Sample the box uniformly and compare g with f.

    Args:
        f: Objective expression in x1..xn
        b: Variable box
        alpha: Nonnegative underestimator parameters
        samples: Number of uniform samples; the midpoint is always evaluated as well
        seed: Seed of the sampling generator
        slack: Largest g - f treated as roundoff; from settings by default

    Returns:
        UnderestimationReport with the largest g - f, the largest f - g and its
        argmax, and the smallest eigenvalue of the Hessian of g over the samples
    """
    values = _alpha_values(alpha, b.dims)
    lo, hi = b.lower, b.upper
    rng = np.random.default_rng(seed)
    midpoint = box_midpoint(b)
    points = np.vstack([rng.uniform(lo, hi, size=(samples, b.dims)), midpoint])

    f_values = eval_batch(f, points)
    g_values = f_values - ((hi - points) * (points - lo)) @ values
    gap = g_values - f_values
    separation = f_values - g_values
    best = int(np.argmax(separation))

    report = UnderestimationReport(
        samples=samples,
        seed=seed,
        max_underestimation_gap=float(gap.max()),
        max_separation=float(separation[best]),
        argmax=[float(v) for v in points[best]],
        midpoint_separation=float(separation[-1]),
        analytic_separation=float(np.dot(values, box_radius(b) ** 2)),
        min_eigenvalue=float(_min_eigenvalues(f, points, values).min()),
        slack=settings.underestimation_slack if slack is None else slack,
    )
    if not report.underestimates:
        logger.warning(
            "Underestimator exceeds f", gap=report.max_underestimation_gap, argmax=report.argmax
        )
    return report
