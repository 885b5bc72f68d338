#!/usr/bin/env python
"""Reproduce the iteration-count table for both random matrix families."""

import argparse

from scalebb.config import settings
from scalebb.core.schemas import Family
from scalebb.experiment import render_table, run_experiment
from scalebb.logging_config import setup_logging

DIMENSIONS = (3, 5, 10, 15, 20)


def reproduce_table(trials: int, seed: int, jobs: int) -> str:
    """Run every (n, family) row and return the rendered table."""
    config = settings.scaling_config()
    stats = [
        run_experiment(n, family, trials, seed, jobs=jobs, config=config)
        for n in DIMENSIONS
        for family in Family
    ]
    for item in stats:
        if item.anomalies:
            print(f"n={item.n} {item.family.value}: {item.anomalies} anomalous trials")
    return render_table(stats)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--trials", type=int, default=10000)
    parser.add_argument("--seed", type=int, default=settings.experiment_seed)
    parser.add_argument("--jobs", type=int, default=settings.jobs)
    args = parser.parse_args()

    setup_logging(settings.log_level)
    print(f"Running {args.trials} trials per row (seed {args.seed})...")
    print(reproduce_table(args.trials, args.seed, args.jobs))
