"""Brute-force minimizer of the scaling objective for small dimensions.

The objective only depends on ratios of d, so the search fixes the largest
normalized component c_m = 1 and grids the others over {g, 2g, ..., 1}, once
for every choice of m. The best grid point is then polished by cyclic
coordinate-wise bounded scalar minimization.
"""

from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np
import structlog
from scipy.optimize import minimize_scalar

from scalebb.config import settings
from scalebb.core.errors import DimensionTooLarge, InputError, NonpositiveRadius
from scalebb.core.gersch import alpha_objective, deficit_objective, normalize, positive_vector
from scalebb.core.schemas import FloatArray, OracleResult, PointMatrix

logger = structlog.get_logger()

MAX_DIMENSION = 4


def _objectives(h: FloatArray, c: FloatArray) -> FloatArray:
    """Half the summed deficits for every row of the (m, n) array ``c``."""
    hc = c @ h.T
    return np.asarray(0.5 * np.maximum(0.0, -hc / c).sum(axis=1), dtype=float)


def _grid_search(h: FloatArray, m: int, axis: FloatArray) -> tuple[float, FloatArray]:
    n = h.shape[0]
    free = [axis] * (n - 1)
    mesh = np.meshgrid(*free, indexing="ij")
    c = np.ones((mesh[0].size, n))
    others = [i for i in range(n) if i != m]
    for column, values in zip(others, mesh, strict=True):
        c[:, column] = values.ravel()
    values = _objectives(h, c)
    best = int(np.argmin(values))
    return float(values[best]), c[best]


def _refine(
    h: FloatArray, c: FloatArray, value: float, lower: float, rounds: int
) -> tuple[float, FloatArray, int]:
    c = c.copy()
    evaluations = 0
    for _ in range(rounds):
        for i in range(len(c)):
            trial = c.copy()

            def objective(t: float, i: int = i, trial: FloatArray = trial) -> float:
                trial[i] = t
                return float(_objectives(h, trial[np.newaxis, :])[0])

            result = minimize_scalar(objective, bounds=(lower, 1.0), method="bounded")
            evaluations += int(result.nfev)
            if result.fun < value:
                c[i] = float(result.x)
                value = float(result.fun)
    return value, c, evaluations


def oracle_min(
    h: PointMatrix,
    rad: Sequence[float] | FloatArray | None = None,
    grid_step: float | None = None,
    refine_rounds: int | None = None,
    jobs: int = 1,
) -> OracleResult:
    """
    Minimize sum alpha_i rad_i^2 over positive scaling vectors by exhaustive search.

    Args:
        h: Point matrix with n <= 4
        rad: Box radii, all ones by default
        grid_step: Grid spacing in (0, 0.5]; from settings by default
        refine_rounds: Rounds of coordinate-wise refinement; from settings by default
        jobs: Threads sharing the per-component grid searches

    Returns:
        OracleResult with d_star normalized to max component 1
    """
    if h.n > MAX_DIMENSION:
        raise DimensionTooLarge(f"the oracle supports n <= {MAX_DIMENSION}, got n={h.n}")
    step = settings.oracle_grid_step if grid_step is None else grid_step
    if not 0 < step <= 0.5:
        raise InputError(f"grid step must lie in (0, 0.5], got {step}")
    rounds = settings.oracle_refine_rounds if refine_rounds is None else refine_rounds
    r = np.ones(h.n) if rad is None else positive_vector(rad, NonpositiveRadius, "radius")
    normalized = normalize(h, r).h

    if h.n == 1:
        d_star = np.ones(1)
        return OracleResult(
            d_star=d_star,
            alpha_objective=alpha_objective(h, d_star, r),
            deficit_objective=deficit_objective(h, d_star, r),
            grid_step=step,
            evaluations=1,
        )

    count = int(np.floor(1.0 / step + 1e-9))
    # c = 1 is always a grid point
    axis = np.unique(np.append(np.minimum(np.arange(1, count + 1) * step, 1.0), 1.0))
    components = range(h.n)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            searches = list(pool.map(lambda m: _grid_search(normalized, m, axis), components))
    else:
        searches = [_grid_search(normalized, m, axis) for m in components]

    # first minimum wins, so ties go to the smallest fixed component
    best_value, best_c = searches[0]
    for value, c in searches[1:]:
        if value < best_value:
            best_value, best_c = value, c
    evaluations = h.n * len(axis) ** (h.n - 1)

    value, c, refine_evaluations = _refine(normalized, best_c, best_value, step / 10, rounds)
    evaluations += refine_evaluations

    d = r * c
    d_star = d / d.max()
    result = OracleResult(
        d_star=d_star,
        alpha_objective=alpha_objective(h, d_star, r),
        deficit_objective=deficit_objective(h, d_star, r),
        grid_step=step,
        evaluations=evaluations,
    )
    logger.debug(
        "Oracle search finished",
        n=h.n,
        grid_step=step,
        evaluations=evaluations,
        grid_objective=best_value,
        refined_objective=value,
    )
    return result
