"""Initial states, experiment assembly and the running example"""

from .experiment import build_scenarios, resolve_gbm_table
from .initial_state import (
    LENDER,
    PopulationStateBuilder,
    borrower_ids,
    build_initial_state,
    liquidator_ids,
    populate_state,
)
from .running_example import (
    EXAMPLE_LIQUIDATIONS,
    EXPECTED_TABLE,
    ReplayReport,
    replay_all_orders,
    running_example_state,
    table_row,
)

__all__ = [
    "build_scenarios",
    "resolve_gbm_table",
    "LENDER",
    "PopulationStateBuilder",
    "borrower_ids",
    "build_initial_state",
    "liquidator_ids",
    "populate_state",
    "EXAMPLE_LIQUIDATIONS",
    "EXPECTED_TABLE",
    "ReplayReport",
    "replay_all_orders",
    "running_example_state",
    "table_row",
]
