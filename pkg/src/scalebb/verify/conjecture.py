"""Seeded comparison of Local Improvement II against the brute-force oracle."""

import numpy as np
import structlog

from scalebb.config import settings
from scalebb.core.gersch import alpha_objective, is_irreducible
from scalebb.core.scaling import li2
from scalebb.core.schemas import (
    ConjectureReport,
    Counterexample,
    Family,
    PointMatrix,
    ScalingConfig,
)
from scalebb.experiment.generator import gen_matrix, trial_rng
from scalebb.verify.oracle import MAX_DIMENSION, oracle_min

logger = structlog.get_logger()

# smallest objective gap tolerated regardless of the grid
MIN_ALLOWANCE = 1e-6


def irreducible_instance(n: int, rng: np.random.Generator) -> PointMatrix:
    """Draw general-family matrices until one is irreducible."""
    while True:
        h = gen_matrix(n, Family.GENERAL, rng)
        if is_irreducible(h):
            return h


def allowance(h: PointMatrix, grid_step: float) -> float:
    return max(MIN_ALLOWANCE, 2 * grid_step * h.norm_inf)


def conjecture_test(
    n: int,
    trials: int,
    seed: int,
    grid_step: float | None = None,
    jobs: int = 1,
    config: ScalingConfig | None = None,
) -> ConjectureReport:
    """
    Compare li2 from d = 1 with the oracle on seeded random irreducible instances.

    A trial passes when li2's objective is within ``allowance`` of the oracle's.
    Failing instances are kept verbatim in the report.
    """
    if not 2 <= n <= MAX_DIMENSION:
        raise ValueError(f"conjecture trials need 2 <= n <= {MAX_DIMENSION}, got {n}")
    step = settings.oracle_grid_step if grid_step is None else grid_step
    report = ConjectureReport(n=n, trials=trials, seed=seed, grid_step=step)
    logger.info("Starting conjecture test", n=n, trials=trials, seed=seed, grid_step=step)

    for t in range(trials):
        h = irreducible_instance(n, trial_rng(seed, t))
        ones = np.ones(n)
        state = li2(h, ones, config=config)
        heuristic = alpha_objective(h, state.d)
        oracle = oracle_min(h, ones, grid_step=step, jobs=jobs)
        limit = allowance(h, step)
        if heuristic <= oracle.alpha_objective + limit:
            report.passes += 1
            continue
        report.failures += 1
        report.counterexamples.append(
            Counterexample(
                h=h.h.tolist(),
                d_li2=[float(v) for v in state.d],
                d_oracle=[float(v) for v in oracle.d_star],
                alpha_objective_li2=heuristic,
                alpha_objective_oracle=oracle.alpha_objective,
                allowance=limit,
            )
        )
        logger.warning(
            "Counterexample found",
            trial=t,
            alpha_objective_li2=heuristic,
            alpha_objective_oracle=oracle.alpha_objective,
        )

    logger.info(
        "Conjecture test complete", passes=report.passes, failures=report.failures
    )
    return report
