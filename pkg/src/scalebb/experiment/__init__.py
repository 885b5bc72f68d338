"""Random-matrix iteration experiments."""

from scalebb.experiment.generator import exlin_matrix, exoscil_matrix, gen_matrix, trial_rng
from scalebb.experiment.runner import run_experiment, run_trial
from scalebb.experiment.table import render_table, stats_frame

__all__ = [
    "exlin_matrix",
    "exoscil_matrix",
    "gen_matrix",
    "render_table",
    "run_experiment",
    "run_trial",
    "stats_frame",
    "trial_rng",
]
