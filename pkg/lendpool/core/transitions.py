"""
Transition Rules
The seven lending-pool actions as checked state-to-state functions
"""

import logging
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from .errors import (
    BorrowerSafe,
    DomainMismatch,
    ExceedsLoan,
    ExceedsMaxLiq,
    InsufficientBalance,
    InsufficientCollateralHeld,
    InsufficientPoolFunds,
    NonPositiveAmount,
    NonPositivePrice,
    NotMinted,
    OverLiquidation,
    Undercollateralized,
    UndefinedResult,
    UnknownToken,
)
from .state import LpState, MintedSupply, collateralization, exchange_rate
from .tokens import AgentId, TokenId, approx_eq, approx_le, approx_lt

logger = logging.getLogger(__name__)


def _snap(v: float, available: float) -> float:
    """Use the available amount when v matches it within tolerance"""
    return available if approx_eq(v, available) else v


def _require_positive(v: float):
    if not v > 0:
        raise NonPositiveAmount(f"Amount must be positive, got {v}")


def _require_free(s: LpState, tau: TokenId):
    if tau.is_minted:
        raise UnknownToken(f"{tau} is a minted token, expected a free token")
    s.price(tau)


def _require_safe(s: LpState, agent: AgentId):
    c = collateralization(s, agent)
    if approx_lt(c, s.params.c_min):
        raise Undercollateralized(
            f"Collateralization of {agent!r} would be {c:.6g} < CMin {s.params.c_min}"
        )


def deposit(s: LpState, a: AgentId, v: float, tau: TokenId) -> LpState:
    """
    Dep_a(v: τ) - move v units of a free token into the pool

    The pool mints v / ER units of τ' (ER taken on the pre-state) and
    registers τ' on the first deposit of τ.
    """
    wallet = s.wallet(a)
    _require_positive(v)
    _require_free(s, tau)
    available = wallet.balance(tau)
    if not approx_le(v, available):
        raise InsufficientBalance(f"{a!r} holds {available} {tau}, cannot deposit {v}")
    v = _snap(v, available)

    entry = s.pool.minted.get(tau) or MintedSupply(tau.minted(), 0.0)
    rate = s.exchange_rates.get(entry.token, 1.0)
    if not rate > 0:
        raise UndefinedResult(f"Exchange rate of {entry.token} is {rate}")
    minted_amount = v / rate

    wallet = wallet.debit(tau, v).credit(entry.token, minted_amount)
    pool = replace(s.pool, funds=s.pool.funds.credit(tau, v))
    pool = pool.with_supply(tau, MintedSupply(entry.token, entry.supply + minted_amount))
    return s.with_wallet(wallet).with_pool(pool)


def redeem(s: LpState, a: AgentId, v: float, tau_m: TokenId) -> LpState:
    """
    Rdm_a(v: τ') - return v minted tokens for v * ER units of the underlying

    Allowed only if the pool holds the payout and a stays at or above CMin.
    """
    wallet = s.wallet(a)
    _require_positive(v)
    if not tau_m.is_minted:
        raise NotMinted(f"{tau_m} is not a minted token")
    entry = s.pool.supply_entry(tau_m)
    tau = tau_m.underlying

    held = wallet.balance(tau_m)
    if not approx_le(v, held):
        raise InsufficientBalance(f"{a!r} holds {held} {tau_m}, cannot redeem {v}")
    v = _snap(v, held)

    payout = v * exchange_rate(s, tau_m)
    funds = s.pool.funds.amount(tau)
    if not approx_le(payout, funds):
        raise InsufficientPoolFunds(f"Pool holds {funds} {tau}, redeem needs {payout}")
    payout = _snap(payout, funds)

    wallet = wallet.debit(tau_m, v).credit(tau, payout)
    pool = replace(s.pool, funds=s.pool.funds.debit(tau, payout))
    pool = pool.with_supply(tau, MintedSupply(tau_m, _snap(entry.supply - v, 0.0)))
    post = s.with_wallet(wallet).with_pool(pool)
    _require_safe(post, a)
    return post


def borrow(s: LpState, a: AgentId, v: float, tau: TokenId) -> LpState:
    """Bor_a(v: τ) - take v units of a free token as a loan"""
    wallet = s.wallet(a)
    _require_positive(v)
    _require_free(s, tau)
    funds = s.pool.funds.amount(tau)
    if not approx_le(v, funds):
        raise InsufficientPoolFunds(f"Pool holds {funds} {tau}, cannot lend {v}")
    v = _snap(v, funds)

    pool = replace(s.pool, funds=s.pool.funds.debit(tau, v))
    pool = pool.with_loans(a, s.pool.loans_of(a).credit(tau, v))
    post = s.with_wallet(wallet.credit(tau, v)).with_pool(pool)
    _require_safe(post, a)
    return post


def repay(s: LpState, a: AgentId, v: float, tau: TokenId) -> LpState:
    """Rep_a(v: τ) - pay back v units of a loan in τ"""
    wallet = s.wallet(a)
    _require_positive(v)
    _require_free(s, tau)
    available = wallet.balance(tau)
    if not approx_le(v, available):
        raise InsufficientBalance(f"{a!r} holds {available} {tau}, cannot repay {v}")
    loan = s.pool.loans_of(a).amount(tau)
    if not approx_le(v, loan):
        raise ExceedsLoan(f"{a!r} owes {loan} {tau}, cannot repay {v}")
    v = _snap(_snap(v, loan), available)

    pool = replace(s.pool, funds=s.pool.funds.credit(tau, v))
    pool = pool.with_loans(a, s.pool.loans_of(a).debit(tau, v))
    return s.with_wallet(wallet.debit(tau, v)).with_pool(pool)


def liquidate(
    s: LpState,
    liquidator: AgentId,
    borrower: AgentId,
    v: float,
    tau_hat: TokenId,
    tau_m: TokenId,
) -> LpState:
    """
    Liq_liquidator(borrower, v: τ̂, τ') - repay part of a loan, seize collateral

    Preconditions are checked in rule order; the first violated one raises.

    Args:
        s: Pre-state
        liquidator: Agent paying v units of tau_hat
        borrower: Undercollateralized agent whose loan is repaid
        v: Amount of tau_hat repaid
        tau_hat: Free token of the repaid loan
        tau_m: Minted token seized from the borrower

    Returns:
        Post-state; prices and minted supplies are unchanged
    """
    liq_wallet = s.wallet(liquidator)
    s.wallet(borrower)
    _require_positive(v)
    _require_free(s, tau_hat)

    # Seize token must be minted
    if not tau_m.is_minted:
        raise NotMinted(f"{tau_m} is not a minted token")
    try:
        s.pool.supply_entry(tau_m)
    except UnknownToken as exc:
        raise NotMinted(str(exc)) from None
    tau = tau_m.underlying

    # Liquidator pays from its own balance
    available = liq_wallet.balance(tau_hat)
    if not approx_le(v, available):
        raise InsufficientBalance(f"{liquidator!r} holds {available} {tau_hat}, cannot pay {v}")

    # At most Maxliq of the loan
    loan = s.pool.loans_of(borrower).amount(tau_hat)
    if not approx_le(v, loan * s.params.max_liq):
        raise ExceedsMaxLiq(
            f"Repaying {v} exceeds Maxliq {s.params.max_liq} of loan {loan} {tau_hat}"
        )
    v = _snap(_snap(v, loan), available)

    # Borrower holds the seized collateral
    seized = v * (s.price(tau_hat) / s.price(tau)) * s.params.r_liq
    held = s.wallet(borrower).balance(tau_m)
    if not approx_le(seized, held):
        raise InsufficientCollateralHeld(f"{borrower!r} holds {held} {tau_m}, seizing {seized}")
    seized = _snap(seized, held)

    # Borrower must be under CMin
    c_pre = collateralization(s, borrower)
    if not approx_lt(c_pre, s.params.c_min):
        raise BorrowerSafe(f"{borrower!r} has collateralization {c_pre:.6g} >= CMin")

    # Updates
    pool = replace(s.pool, funds=s.pool.funds.credit(tau_hat, v))
    pool = pool.with_loans(borrower, s.pool.loans_of(borrower).debit(tau_hat, v))
    post = s.with_pool(pool)
    post = post.with_wallet(post.wallet(liquidator).debit(tau_hat, v).credit(tau_m, seized))
    post = post.with_wallet(post.wallet(borrower).debit(tau_m, seized))

    # No over-liquidation
    c_post = collateralization(post, borrower)
    if not approx_le(c_post, s.params.c_min):
        raise OverLiquidation(
            f"Collateralization of {borrower!r} would rise to {c_post:.6g} > CMin"
        )

    logger.debug(
        f"Liq_{liquidator}({borrower}, {v:.6g}:{tau_hat}, {tau_m}) "
        f"seized {seized:.6g}, C {c_pre:.4f} -> {c_post:.4f}"
    )
    return post


def accrue_interest(s: LpState) -> LpState:
    """Int - multiply every loan by (1 + interest_rate)"""
    rate = s.params.interest_rate
    if rate == 0 or not s.pool.loans:
        return s
    loans = {agent: book.scaled(1 + rate) for agent, book in s.pool.loans.items()}
    return s.with_pool(replace(s.pool, loans=loans))


def update_prices(s: LpState, new_prices: Mapping[TokenId, float]) -> LpState:
    """Price - replace the price function; the token domain must not change"""
    if set(new_prices) != set(s.prices):
        raise DomainMismatch(
            f"Price update covers {sorted(map(str, new_prices))}, "
            f"state prices {sorted(map(str, s.prices))}"
        )
    for tau, price in new_prices.items():
        if not price > 0:
            raise NonPositivePrice(f"Price of {tau} must be positive, got {price}")
    return replace(s, prices=dict(new_prices))


class ActionKind(Enum):
    DEPOSIT = "Dep"
    REDEEM = "Rdm"
    BORROW = "Bor"
    REPAY = "Rep"
    LIQUIDATE = "Liq"
    INTEREST = "Int"
    PRICE = "Price"


@dataclass(frozen=True)
class Action:
    """
    One named transition with its parameters

    agent fires the action; for Liq it is the liquidator and token is the
    repaid free token τ̂.
    """

    kind: ActionKind
    agent: Optional[AgentId] = None
    amount: float = 0.0
    token: Optional[TokenId] = None
    borrower: Optional[AgentId] = None
    seize_token: Optional[TokenId] = None
    prices: Optional[Mapping[TokenId, float]] = None

    def __str__(self) -> str:
        if self.kind is ActionKind.INTEREST:
            return "Int"
        if self.kind is ActionKind.PRICE:
            return "Price(" + ", ".join(f"{t}={p:g}" for t, p in (self.prices or {}).items()) + ")"
        if self.kind is ActionKind.LIQUIDATE:
            return (
                f"Liq_{self.agent}({self.borrower}, {self.amount:g}:{self.token}, "
                f"{self.seize_token})"
            )
        return f"{self.kind.value}_{self.agent}({self.amount:g}:{self.token})"


Trace = List[Tuple[Action, LpState]]

_RULES: Dict[ActionKind, Callable[[LpState, Action], LpState]] = {
    ActionKind.DEPOSIT: lambda s, act: deposit(s, act.agent, act.amount, act.token),
    ActionKind.REDEEM: lambda s, act: redeem(s, act.agent, act.amount, act.token),
    ActionKind.BORROW: lambda s, act: borrow(s, act.agent, act.amount, act.token),
    ActionKind.REPAY: lambda s, act: repay(s, act.agent, act.amount, act.token),
    ActionKind.LIQUIDATE: lambda s, act: liquidate(
        s, act.agent, act.borrower, act.amount, act.token, act.seize_token
    ),
    ActionKind.INTEREST: lambda s, act: accrue_interest(s),
    ActionKind.PRICE: lambda s, act: update_prices(s, act.prices or {}),
}


def apply_action(s: LpState, action: Action) -> LpState:
    """Fire one action against s"""
    return _RULES[action.kind](s, action)


def run_trace(s: LpState, actions: Sequence[Action]) -> Trace:
    """
    Apply actions in order

    Returns:
        List of (action, state reached) pairs; stops at the first failing
        action by raising its error
    """
    trace: Trace = []
    for action in actions:
        s = apply_action(s, action)
        trace.append((action, s))
    return trace
