"""Lending-pool state and transition rules"""

from . import errors
from .state import (
    LpParams,
    LpState,
    MintedSupply,
    Pool,
    Wallet,
    borrowers,
    build_state,
    check_invariants,
    collateralization,
    exchange_rate,
    free_token_totals,
    minted_holdings,
    value_lent,
    value_minted,
)
from .tokens import AgentId, TokenClass, TokenId, TokenMap, map_apply
from .transitions import (
    Action,
    ActionKind,
    Trace,
    accrue_interest,
    apply_action,
    borrow,
    deposit,
    liquidate,
    redeem,
    repay,
    run_trace,
    update_prices,
)

__all__ = [
    "errors",
    "AgentId",
    "TokenClass",
    "TokenId",
    "TokenMap",
    "map_apply",
    "LpParams",
    "LpState",
    "MintedSupply",
    "Pool",
    "Wallet",
    "borrowers",
    "build_state",
    "check_invariants",
    "collateralization",
    "exchange_rate",
    "free_token_totals",
    "minted_holdings",
    "value_lent",
    "value_minted",
    "Action",
    "ActionKind",
    "Trace",
    "accrue_interest",
    "apply_action",
    "borrow",
    "deposit",
    "liquidate",
    "redeem",
    "repay",
    "run_trace",
    "update_prices",
]
