"""
Lending Pool State
Wallets, pool and prices (Γ = σ | π | p) plus the value functions over them
"""

import math
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import ConfigInvalid, UnknownAgent, UnknownToken
from .tokens import AgentId, TokenId, TokenMap, approx_eq, token_key


@dataclass(frozen=True)
class LpParams:
    """
    Protocol parameters

    Attributes:
        c_min: Collateralization threshold below which agents can be liquidated
        r_liq: Liquidation reward factor
        max_liq: Largest fraction of a loan repayable in one liquidation
        interest_rate: Multiplicative rate applied to loans by each Int step
    """

    c_min: float = 1.5
    r_liq: float = 1.1
    max_liq: float = 0.5
    interest_rate: float = 0.0

    def __post_init__(self):
        errors = []
        if not self.c_min > 1:
            errors.append(f"c_min must be > 1, got {self.c_min}")
        if not self.r_liq >= 1:
            errors.append(f"r_liq must be >= 1, got {self.r_liq}")
        if not self.r_liq < self.c_min:
            errors.append(f"r_liq ({self.r_liq}) must be < c_min ({self.c_min})")
        if not 0 < self.max_liq <= 1:
            errors.append(f"max_liq must be in (0, 1], got {self.max_liq}")
        if not self.interest_rate >= 0:
            errors.append(f"interest_rate must be >= 0, got {self.interest_rate}")
        if errors:
            raise ConfigInvalid("; ".join(errors))


@dataclass(frozen=True)
class Wallet:
    """
    An agent's balances over free and minted tokens

    Wallets with unbounded_funds never fail a free-token debit and their
    free-token balances are not tracked.
    """

    owner: AgentId
    balances: TokenMap = field(default_factory=TokenMap)
    unbounded_funds: bool = False

    def balance(self, tau: TokenId) -> float:
        if self.unbounded_funds and not tau.is_minted:
            return math.inf
        return self.balances.amount(tau)

    def credit(self, tau: TokenId, v: float) -> "Wallet":
        if self.unbounded_funds and not tau.is_minted:
            return self
        return replace(self, balances=self.balances.credit(tau, v))

    def debit(self, tau: TokenId, v: float) -> "Wallet":
        if self.unbounded_funds and not tau.is_minted:
            return self
        return replace(self, balances=self.balances.debit(tau, v))


@dataclass(frozen=True)
class MintedSupply:
    token: TokenId
    supply: float = 0.0


@dataclass(frozen=True)
class Pool:
    """
    The pool component π = (π_f, π_l, π_m)

    Attributes:
        funds: Free tokens held by the pool
        loans: Per-agent loan book over free tokens
        minted: Free token -> its minted token and outstanding supply
    """

    funds: TokenMap = field(default_factory=TokenMap)
    loans: Mapping[AgentId, TokenMap] = field(default_factory=dict)
    minted: Mapping[TokenId, MintedSupply] = field(default_factory=dict)

    def loans_of(self, agent: AgentId) -> TokenMap:
        return self.loans.get(agent, TokenMap())

    def with_loans(self, agent: AgentId, loans: TokenMap) -> "Pool":
        book = dict(self.loans)
        book[agent] = loans
        return replace(self, loans=book)

    def with_supply(self, tau: TokenId, entry: MintedSupply) -> "Pool":
        minted = dict(self.minted)
        minted[tau] = entry
        return replace(self, minted=minted)

    def supply_entry(self, tau_m: TokenId) -> MintedSupply:
        """Registered supply entry for a minted token"""
        if not tau_m.is_minted:
            raise UnknownToken(f"{tau_m} is not a minted token")
        entry = self.minted.get(tau_m.underlying)
        if entry is None or entry.token != tau_m:
            raise UnknownToken(f"Minted token {tau_m} is not registered with the pool")
        return entry


@dataclass(frozen=True)
class LpState:
    """
    Full lending-pool configuration

    Treated as an immutable value: every transition returns a new state.
    """

    wallets: Mapping[AgentId, Wallet]
    pool: Pool
    prices: Mapping[TokenId, float]
    params: LpParams = field(default_factory=LpParams)

    @property
    def agents(self) -> List[AgentId]:
        return sorted(self.wallets)

    def wallet(self, agent: AgentId) -> Wallet:
        try:
            return self.wallets[agent]
        except KeyError:
            raise UnknownAgent(f"Unknown agent {agent!r}") from None

    def price(self, tau: TokenId) -> float:
        try:
            return self.prices[tau]
        except KeyError:
            raise UnknownToken(f"No price for token {tau}") from None

    def with_wallet(self, wallet: Wallet) -> "LpState":
        wallets = dict(self.wallets)
        wallets[wallet.owner] = wallet
        return replace(self, wallets=wallets)

    def with_pool(self, pool: Pool) -> "LpState":
        return replace(self, pool=pool)

    @cached_property
    def total_loans(self) -> Dict[TokenId, float]:
        totals: Dict[TokenId, float] = {}
        for agent in sorted(self.pool.loans):
            for tau, amount in self.pool.loans[agent].items():
                totals[tau] = totals.get(tau, 0.0) + amount
        return totals

    @cached_property
    def exchange_rates(self) -> Dict[TokenId, float]:
        rates = {}
        for tau, entry in self.pool.minted.items():
            if entry.supply > 0:
                backing = self.pool.funds.amount(tau) + self.total_loans.get(tau, 0.0)
                rates[entry.token] = backing / entry.supply
            else:
                rates[entry.token] = 1.0
        return rates


def exchange_rate(s: LpState, tau_m: TokenId) -> float:
    """
    Underlying-token value of one minted token

    ER(τ', τ) = (π_f(τ) + total loans of τ) / supply(τ'), or 1 when nothing
    has been minted yet.

    Raises:
        UnknownToken: if tau_m is not a registered minted token
    """
    s.pool.supply_entry(tau_m)
    return s.exchange_rates[tau_m]


def _require_agent(s: LpState, a: AgentId):
    if a not in s.wallets and a not in s.pool.loans:
        raise UnknownAgent(f"Unknown agent {a!r}")


def value_lent(s: LpState, a: AgentId) -> float:
    """Value of the tokens lent to agent a (V^l)"""
    _require_agent(s, a)
    return math.fsum(amount * s.price(tau) for tau, amount in s.pool.loans_of(a).items())


def value_minted(s: LpState, a: AgentId) -> float:
    """Value of the minted tokens held by agent a (V^m)"""
    _require_agent(s, a)
    wallet = s.wallets.get(a)
    if wallet is None:
        return 0.0
    return math.fsum(
        amount * exchange_rate(s, tau) * s.price(tau.underlying)
        for tau, amount in wallet.balances.items()
        if tau.is_minted
    )


def collateralization(s: LpState, a: AgentId) -> float:
    """
    Collateralization C(a) = V^m / V^l

    Returns math.inf for agents without loans, whatever they hold.
    """
    lent = value_lent(s, a)
    if lent == 0:
        return math.inf
    return value_minted(s, a) / lent


def borrowers(s: LpState) -> List[AgentId]:
    """Agents with a non-empty loan book, in id order"""
    return sorted(a for a, book in s.pool.loans.items() if any(v > 0 for v in book.values()))


def free_token_totals(s: LpState) -> Dict[TokenId, float]:
    """
    Pool funds plus wallet balances per free token

    Wallets with unbounded funds are excluded; the totals are constant under
    Dep/Rdm/Bor/Rep/Liq among finite-funds agents.
    """
    totals: Dict[TokenId, float] = {}
    for tau, amount in s.pool.funds.items():
        totals[tau] = totals.get(tau, 0.0) + amount
    for agent in s.agents:
        wallet = s.wallets[agent]
        if wallet.unbounded_funds:
            continue
        for tau, amount in wallet.balances.items():
            if not tau.is_minted:
                totals[tau] = totals.get(tau, 0.0) + amount
    return totals


def minted_holdings(s: LpState) -> Dict[TokenId, float]:
    """Sum over all wallets of each minted token balance"""
    held: Dict[TokenId, float] = {}
    for agent in s.agents:
        for tau, amount in s.wallets[agent].balances.items():
            if tau.is_minted:
                held[tau] = held.get(tau, 0.0) + amount
    return held


def check_invariants(s: LpState) -> Tuple[bool, List[str]]:
    """
    Validate the structural invariants of a state

    Checks:
    - wallet keys match wallet owners
    - every price is positive and every pooled or lent token is priced
    - minted registrations are well formed
    - minted supply equals the tokens held across wallets
    - wallets only hold registered minted tokens

    Args:
        s: State to check

    Returns:
        Tuple of (is_valid, list of error messages)
    """
    errors = []

    for agent, wallet in s.wallets.items():
        if wallet.owner != agent:
            errors.append(f"Wallet key {agent!r} holds wallet of {wallet.owner!r}")

    for tau, price in s.prices.items():
        if tau.is_minted:
            errors.append(f"Minted token {tau} has a price")
        if not price > 0:
            errors.append(f"Price of {tau} is not positive: {price}")

    for tau in s.pool.funds:
        if tau.is_minted:
            errors.append(f"Pool funds hold minted token {tau}")
        if tau not in s.prices:
            errors.append(f"Pool funds hold unpriced token {tau}")

    for agent, book in s.pool.loans.items():
        for tau in book:
            if tau.is_minted or tau not in s.prices:
                errors.append(f"Loan of {agent!r} in unpriced or minted token {tau}")

    held = minted_holdings(s)
    registered = set()
    for tau, entry in s.pool.minted.items():
        if tau.is_minted or entry.token.underlying != tau:
            errors.append(f"Malformed minted registration {tau} -> {entry.token}")
            continue
        registered.add(entry.token)
        if entry.supply < 0:
            errors.append(f"Negative supply for {entry.token}")
        if not approx_eq(entry.supply, held.get(entry.token, 0.0)):
            errors.append(
                f"Supply of {entry.token} is {entry.supply} but wallets hold "
                f"{held.get(entry.token, 0.0)}"
            )

    for tau in sorted(held, key=token_key):
        if tau not in registered:
            errors.append(f"Wallets hold unregistered minted token {tau}")

    return len(errors) == 0, errors


def build_state(
    wallets: List[Wallet],
    prices: Mapping[TokenId, float],
    params: Optional[LpParams] = None,
    funds: Optional[Mapping[TokenId, float]] = None,
    loans: Optional[Mapping[AgentId, Mapping[TokenId, float]]] = None,
) -> LpState:
    """
    Assemble a state directly from its components

    Minted supplies are derived from the wallets so supply conservation
    holds by construction.
    """
    held: Dict[TokenId, float] = {}
    for wallet in wallets:
        for tau, amount in wallet.balances.items():
            if tau.is_minted:
                held[tau] = held.get(tau, 0.0) + amount

    minted = {tau.underlying: MintedSupply(tau, supply) for tau, supply in held.items()}
    pool = Pool(
        funds=TokenMap(funds or {}),
        loans={agent: TokenMap(book) for agent, book in (loans or {}).items()},
        minted=minted,
    )
    return LpState(
        wallets={wallet.owner: wallet for wallet in wallets},
        pool=pool,
        prices=dict(prices),
        params=params or LpParams(),
    )
