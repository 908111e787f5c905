"""
Lending Pool Liquidation Simulator
Transition-system model of a lending pool, rational liquidators, GBM price
scenarios and confidence-controlled Monte-Carlo parameter sweeps
"""

__version__ = "1.0.0"

from .analysis import Simulator, estimate_mean, estimate_means, sweep
from .config import ExperimentConfig, load_config
from .core import LpParams, LpState, TokenId, apply_action, collateralization
from .data_ingest import PriceHistoryLoader, PriceHistoryValidator
from .pricing import GbmParams, build_scenario, estimate_params, generate_path
from .scenario import build_initial_state, replay_all_orders
from .strategy import liquidation_round, select_plan

__all__ = [
    "Simulator",
    "estimate_mean",
    "estimate_means",
    "sweep",
    "ExperimentConfig",
    "load_config",
    "LpParams",
    "LpState",
    "TokenId",
    "apply_action",
    "collateralization",
    "PriceHistoryLoader",
    "PriceHistoryValidator",
    "GbmParams",
    "build_scenario",
    "estimate_params",
    "generate_path",
    "build_initial_state",
    "replay_all_orders",
    "liquidation_round",
    "select_plan",
]
