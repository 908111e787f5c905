"""GBM price engine"""

from .estimation import estimate_from_frame, estimate_params, log_returns
from .gbm import (
    DAY,
    DEFAULT_HORIZON,
    TRIMESTER,
    GbmParams,
    PricePath,
    correlated_normals,
    gbm_step,
    generate_path,
    process_coefficients,
)
from .scenarios import DEFAULT_GBM_TABLE, SCENARIO_PAIRS, ScenarioSpec, build_scenario

__all__ = [
    "DAY",
    "DEFAULT_HORIZON",
    "TRIMESTER",
    "GbmParams",
    "PricePath",
    "correlated_normals",
    "gbm_step",
    "generate_path",
    "process_coefficients",
    "estimate_from_frame",
    "estimate_params",
    "log_returns",
    "DEFAULT_GBM_TABLE",
    "SCENARIO_PAIRS",
    "ScenarioSpec",
    "build_scenario",
]
