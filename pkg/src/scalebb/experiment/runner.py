"""Iteration-count experiment over random point matrices."""

from collections import Counter
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import structlog

from scalebb.core.errors import NonpositiveSolution, SingularSubsystem
from scalebb.core.gersch import decompose_blocks, saturation, tolerance
from scalebb.core.scaling import li2
from scalebb.core.schemas import Family, PointMatrix, ScalingConfig, TrialStats
from scalebb.experiment.generator import gen_matrix, trial_rng

logger = structlog.get_logger()

# trials handed to a worker process at a time
CHUNK_SIZE = 256


def run_trial(h: PointMatrix, config: ScalingConfig | None = None) -> int | None:
    """Local Improvement II iterations needed from d = 1, or None when skipped.

    A matrix is skipped when it is Gerschgorin-PSD at d = 1 or has no
    unsaturated row. A reducible matrix is processed block by block and counts
    the largest block iteration count; it is skipped when no block iterates.
    """
    config = config or ScalingConfig()
    tau = tolerance(h, config)
    ones = np.ones(h.n)
    s = saturation(h, ones)
    if np.all(s >= -tau) or not np.any(s > tau):
        return None

    blocks = decompose_blocks(h)
    if len(blocks) == 1:
        return li2(h, ones, config=config).iterations

    iterations = max(
        li2(h.submatrix(block), np.ones(len(block)), config=config).iterations
        for block in blocks
    )
    return iterations or None


def _trial_outcome(
    n: int, family: Family, seed: int, t: int, config: ScalingConfig
) -> tuple[int | None, bool]:
    """(iterations or None, anomaly) for trial ``t``."""
    h = gen_matrix(n, family, trial_rng(seed, t))
    try:
        return run_trial(h, config), False
    except (SingularSubsystem, NonpositiveSolution) as exc:
        logger.warning("Trial anomaly", n=n, family=family.value, trial=t, error=str(exc))
        return None, True


def _outcome_star(args: tuple[int, Family, int, int, ScalingConfig]) -> tuple[int | None, bool]:
    return _trial_outcome(*args)


def run_experiment(
    n: int,
    family: Family,
    trials: int,
    seed: int,
    jobs: int = 1,
    config: ScalingConfig | None = None,
) -> TrialStats:
    """
    Run ``trials`` seeded trials and aggregate iteration counts.

    Args:
        n: Matrix dimension
        family: Random matrix family
        trials: Number of trials to draw
        seed: Base seed; trial t uses a generator derived from (seed, t)
        jobs: Worker processes; results do not depend on it
        config: Tolerances for the heuristic

    Returns:
        TrialStats with averages over the counted (non-skipped) trials
    """
    if trials < 0:
        raise ValueError(f"trials must be nonnegative, got {trials}")
    config = config or ScalingConfig()
    logger.info("Starting experiment", n=n, family=family.value, trials=trials, jobs=jobs)

    tasks = [(n, family, seed, t, config) for t in range(trials)]
    if jobs > 1 and trials > 0:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_outcome_star, tasks, chunksize=CHUNK_SIZE))
    else:
        outcomes = [_outcome_star(task) for task in tasks]

    counts = [iterations for iterations, _ in outcomes if iterations is not None]
    anomalies = sum(1 for _, anomaly in outcomes if anomaly)
    histogram = dict(sorted(Counter(counts).items()))

    stats = TrialStats(
        n=n,
        family=family,
        trials_requested=trials,
        trials_counted=len(counts),
        skipped=trials - len(counts),
        anomalies=anomalies,
        average_iterations=sum(counts) / len(counts) if counts else None,
        max_iterations=max(counts) if counts else None,
        seed=seed,
        iteration_histogram=histogram,
    )

    logger.info(
        "Experiment complete",
        n=n,
        family=family.value,
        counted=stats.trials_counted,
        skipped=stats.skipped,
        anomalies=anomalies,
        average_iterations=stats.average_iterations,
        max_iterations=stats.max_iterations,
    )
    return stats
