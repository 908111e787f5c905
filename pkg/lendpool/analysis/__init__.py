"""Simulation, sequential estimation and parameter sweeps"""

from .estimator import CiEstimate, EnsembleEstimate, StatsParams, estimate_mean, estimate_means
from .simulator import DEFAULT_C_CAP, SimulationResult, Simulator, run_simulation
from .sweep import (
    RESULT_COLUMNS,
    GridRule,
    SweepCell,
    parse_grid,
    results_frame,
    summarize_sweep,
    sweep,
    validate_grid,
    write_results,
)

__all__ = [
    "CiEstimate",
    "EnsembleEstimate",
    "StatsParams",
    "estimate_mean",
    "estimate_means",
    "DEFAULT_C_CAP",
    "SimulationResult",
    "Simulator",
    "run_simulation",
    "RESULT_COLUMNS",
    "GridRule",
    "SweepCell",
    "parse_grid",
    "results_frame",
    "summarize_sweep",
    "sweep",
    "validate_grid",
    "write_results",
]
