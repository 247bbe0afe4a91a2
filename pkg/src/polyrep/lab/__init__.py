"""Experiment harness: configuration, the named experiments, plots."""

from .config import ExperimentConfig, admissible_h_window, theta_bounds
from .experiments import (
    Report,
    run_average,
    run_decomposition,
    run_kernel_check,
    run_l2_scaling,
    run_tolev_scaling,
)
from .plots import emit_plots
