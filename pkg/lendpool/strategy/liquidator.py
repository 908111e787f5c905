"""
Liquidation Strategy
Chooses liquidate parameters that maximise the value of seized collateral

For a liquidator L the strategy fills in the remaining Liq parameters:
- borrower: any agent other than L with C < CMin
- repay token τ̂: any free token the borrower owes
- seize token τ': any minted token the borrower holds
- amount v: the largest amount every precondition admits
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..core.errors import IllPosed, InternalInconsistency, NoRepayableLoan, TransitionError
from ..core.state import (
    LpState,
    borrowers,
    collateralization,
    exchange_rate,
    value_lent,
    value_minted,
)
from ..core.tokens import AgentId, TokenId, approx_eq, approx_lt, token_key
from ..core.transitions import Action, ActionKind, apply_action

logger = logging.getLogger(__name__)

# Relative back-off applied when a plan would repay a borrower's whole debt
CLEARING_MARGIN = 1e-6


@dataclass(frozen=True)
class LiquidationPlan:
    """
    Parameters of one Liq action

    Attributes:
        borrower: Agent to liquidate
        repay_amount: Units of repay_token paid to the pool
        repay_token: Free token of the repaid loan (τ̂)
        seize_token: Minted token taken from the borrower (τ')
        expected_seize_value: repay_amount * p(τ̂) * Rliq, in USD
    """

    borrower: AgentId
    repay_amount: float
    repay_token: TokenId
    seize_token: TokenId
    expected_seize_value: float

    def to_action(self, liquidator: AgentId) -> Action:
        return Action(
            kind=ActionKind.LIQUIDATE,
            agent=liquidator,
            amount=self.repay_amount,
            token=self.repay_token,
            borrower=self.borrower,
            seize_token=self.seize_token,
        )


def restoring_repay_amount(
    s: LpState,
    borrower: AgentId,
    tau_hat: TokenId,
    tau_m: TokenId,
) -> float:
    """
    Repay amount that brings the borrower's collateralization back to CMin

    Repaying v lowers V^l by v*p(τ̂) and V^m by v*p(τ̂)*Rliq*ER, so
    post-C = CMin solves to

        v* = (CMin*V^l - V^m) / (p(τ̂) * (CMin - Rliq*ER))

    Args:
        s: Current state
        borrower: Agent to restore
        tau_hat: Repaid free token
        tau_m: Seized minted token

    Returns:
        v*, or 0 when the borrower is already at or above CMin

    Raises:
        IllPosed: if Rliq * ER >= CMin
    """
    params = s.params
    rate = exchange_rate(s, tau_m)
    gap = params.c_min - params.r_liq * rate
    if not gap > 0:
        raise IllPosed(
            f"Rliq * ER = {params.r_liq * rate:.6g} >= CMin = {params.c_min} for {tau_m}"
        )

    shortfall = params.c_min * value_lent(s, borrower) - value_minted(s, borrower)
    return max(shortfall / (s.price(tau_hat) * gap), 0.0)


def max_seizable_repay_amount(
    s: LpState,
    liquidator: AgentId,
    borrower: AgentId,
    tau_hat: TokenId,
    tau_m: TokenId,
) -> float:
    """
    Largest repay amount admitted by the liquidate preconditions

    Minimum of:
    - Maxliq * loan in τ̂
    - collateral held in τ' converted to τ̂ at the Rliq discount
    - the liquidator's τ̂ balance, unless funds are unbounded
    - the restoring amount, when well posed

    An amount that would repay the borrower's only outstanding loan is
    reduced by CLEARING_MARGIN, since C would become infinite.

    Raises:
        NoRepayableLoan: if the minimum is not positive
    """
    params = s.params
    tau = tau_m.underlying
    held = s.wallet(borrower).balance(tau_m)

    caps = [
        params.max_liq * s.pool.loans_of(borrower).amount(tau_hat),
        held * s.price(tau) / (s.price(tau_hat) * params.r_liq),
        s.wallet(liquidator).balance(tau_hat),
    ]
    try:
        caps.append(restoring_repay_amount(s, borrower, tau_hat, tau_m))
    except IllPosed:
        pass

    amount = min(caps)

    # Clearing the borrower's last loan would leave C infinite, which
    # over-liquidation rejects; stop just short of it
    loans = s.pool.loans_of(borrower)
    if approx_eq(amount, loans.amount(tau_hat)) and not any(
        v > 0 for t, v in loans.items() if t != tau_hat
    ):
        amount *= 1 - CLEARING_MARGIN

    if not amount > 0:
        raise NoRepayableLoan(
            f"Nothing repayable for {borrower!r} in {tau_hat} against {tau_m}"
        )
    return amount


def _candidate_pairs(s: LpState, borrower: AgentId) -> List[Tuple[TokenId, TokenId]]:
    loans = s.pool.loans_of(borrower)
    repay_tokens = sorted((t for t, v in loans.items() if v > 0), key=token_key)
    seize_tokens = sorted(
        (t for t, v in s.wallet(borrower).balances.items() if t.is_minted and v > 0),
        key=token_key,
    )
    return [(tau_hat, tau_m) for tau_hat in repay_tokens for tau_m in seize_tokens]


def select_plan(s: LpState, liquidator: AgentId) -> Optional[LiquidationPlan]:
    """
    Best liquidation available to a liquidator

    Candidates are scanned in borrower id order, then repay-token and
    seize-token order; a later candidate wins only with a strictly larger
    seized value, so ties keep the earliest.

    Args:
        s: Current state
        liquidator: Agent that would fire the Liq action

    Returns:
        LiquidationPlan, or None when nobody is undercollateralized or no
        positive amount is repayable
    """
    best: Optional[LiquidationPlan] = None
    c_min = s.params.c_min

    for borrower in borrowers(s):
        if borrower == liquidator or borrower not in s.wallets:
            continue
        if not approx_lt(collateralization(s, borrower), c_min):
            continue

        for tau_hat, tau_m in _candidate_pairs(s, borrower):
            try:
                amount = max_seizable_repay_amount(s, liquidator, borrower, tau_hat, tau_m)
            except NoRepayableLoan:
                continue

            value = amount * s.price(tau_hat) * s.params.r_liq
            if best is None or (
                value > best.expected_seize_value
                and not approx_eq(value, best.expected_seize_value)
            ):
                best = LiquidationPlan(borrower, amount, tau_hat, tau_m, value)

    return best


def liquidation_round(
    s: LpState,
    liquidators: Sequence[AgentId],
) -> Tuple[LpState, List[Action]]:
    """
    Let each liquidator, in order, fire at most one planned liquidation

    Every liquidator re-plans against the state left by the previous one.

    Returns:
        Tuple of (final state, executed actions)

    Raises:
        InternalInconsistency: if a plan fails against its own state
    """
    executed: List[Action] = []

    for liquidator in liquidators:
        plan = select_plan(s, liquidator)
        if plan is None:
            continue

        action = plan.to_action(liquidator)
        try:
            s = apply_action(s, action)
        except TransitionError as exc:
            raise InternalInconsistency(f"Plan {action} failed: {exc}") from exc

        executed.append(action)
        logger.debug(f"{action} (seized value {plan.expected_seize_value:.6g})")

    return s, executed
