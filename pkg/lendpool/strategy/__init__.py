"""Rational liquidator strategy"""

from .liquidator import (
    LiquidationPlan,
    liquidation_round,
    max_seizable_repay_amount,
    restoring_repay_amount,
    select_plan,
)

__all__ = [
    "LiquidationPlan",
    "liquidation_round",
    "max_seizable_repay_amount",
    "restoring_repay_amount",
    "select_plan",
]
