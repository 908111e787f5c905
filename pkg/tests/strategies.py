"""Hypothesis strategies over lending-pool states"""

from hypothesis import strategies as st

from lendpool.core import LpParams, LpState, TokenId, TokenMap, Wallet, build_state

FREE_TOKENS = [TokenId.free(symbol) for symbol in ("t0", "t1", "t2")]
MINTED_TOKENS = [tau.minted() for tau in FREE_TOKENS]
AGENTS = ["A", "B", "C", "D", "E"]

# Two-decimal amounts keep hypothesis away from subnormal floats
amounts = st.integers(min_value=0, max_value=100_000).map(lambda x: x / 100)
prices = st.integers(min_value=50, max_value=200).map(lambda x: x / 100)


@st.composite
def lp_params(draw) -> LpParams:
    c_min = draw(st.sampled_from([1.2, 1.3, 1.5, 2.0]))
    r_liq = draw(st.sampled_from([r for r in (1.0, 1.05, 1.1, 1.2, 1.4) if r < c_min]))
    return LpParams(
        c_min=c_min,
        r_liq=r_liq,
        max_liq=draw(st.sampled_from([0.25, 0.5, 1.0])),
        interest_rate=draw(st.sampled_from([0.0, 0.01])),
    )


@st.composite
def lp_states(draw, max_agents: int = 5, max_tokens: int = 3) -> LpState:
    """Random states with finite-funds agents, every token funded and priced"""
    tokens = FREE_TOKENS[:draw(st.integers(min_value=1, max_value=max_tokens))]
    agents = AGENTS[:draw(st.integers(min_value=2, max_value=max_agents))]

    wallets = []
    loans = {}
    for agent in agents:
        balances = {}
        for tau in tokens:
            if draw(st.booleans()):
                balances[tau] = draw(amounts)
            if draw(st.booleans()):
                balances[tau.minted()] = draw(amounts)
        wallets.append(Wallet(agent, TokenMap(balances)))

        book = {tau: draw(amounts) for tau in tokens if draw(st.booleans())}
        if book:
            loans[agent] = book

    return build_state(
        wallets,
        prices={tau: draw(prices) for tau in tokens},
        params=draw(lp_params()),
        funds={tau: 1.0 + draw(amounts) for tau in tokens},
        loans=loans,
    )


def snapshot(s: LpState) -> dict:
    """Plain-data copy of every state component"""
    return {
        "wallets": {a: (dict(w.balances), w.unbounded_funds) for a, w in s.wallets.items()},
        "funds": dict(s.pool.funds),
        "loans": {a: dict(book) for a, book in s.pool.loans.items()},
        "minted": {tau: (e.token, e.supply) for tau, e in s.pool.minted.items()},
        "prices": dict(s.prices),
        "params": s.params,
    }
