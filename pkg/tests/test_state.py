import math
from dataclasses import replace

import pytest

from lendpool.core import (
    LpParams,
    MintedSupply,
    TokenId,
    TokenMap,
    Wallet,
    accrue_interest,
    borrowers,
    check_invariants,
    collateralization,
    exchange_rate,
    free_token_totals,
    value_lent,
    value_minted,
)
from lendpool.core.errors import ConfigInvalid, UnknownAgent, UnknownToken
from lendpool.scenario.running_example import T0, T0M, T1, T1M


def test_initial_collateralization(gamma0):
    assert collateralization(gamma0, "A") == pytest.approx(1.25)
    assert collateralization(gamma0, "B") == pytest.approx(1.0)
    assert collateralization(gamma0, "C") == pytest.approx(0.8)


def test_agent_without_loans_is_infinitely_collateralized(gamma0):
    assert value_minted(gamma0, "D") == pytest.approx(500.0)
    assert value_lent(gamma0, "D") == 0.0
    assert math.isinf(collateralization(gamma0, "D"))


def test_exchange_rates_start_at_one(gamma0):
    assert exchange_rate(gamma0, T0M) == pytest.approx(1.0)
    assert exchange_rate(gamma0, T1M) == pytest.approx(1.0)


def test_exchange_rate_grows_with_interest(gamma0):
    s = accrue_interest(replace(gamma0, params=replace(gamma0.params, interest_rate=0.01)))
    assert exchange_rate(s, T1M) == pytest.approx((195 + 308.05) / 500)
    assert exchange_rate(s, T0M) == pytest.approx(1.0)


def test_exchange_rate_of_unregistered_token(gamma0):
    with pytest.raises(UnknownToken):
        exchange_rate(gamma0, TokenId.free("t9").minted())


def test_borrowers_in_id_order(gamma0):
    assert borrowers(gamma0) == ["A", "B", "C"]


def test_free_token_totals(gamma0):
    totals = free_token_totals(gamma0)
    assert totals[T0] == pytest.approx(300.0)
    assert totals[T1] == pytest.approx(1000.0)


def test_unknown_agent(gamma0):
    with pytest.raises(UnknownAgent):
        gamma0.wallet("Z")
    with pytest.raises(UnknownAgent):
        collateralization(gamma0, "Z")


def test_invariants_hold_for_example(gamma0):
    ok, errors = check_invariants(gamma0)
    assert ok, errors


def test_invariants_catch_supply_mismatch(gamma0):
    minted = dict(gamma0.pool.minted)
    minted[T0] = MintedSupply(T0M, 301.0)
    broken = gamma0.with_pool(replace(gamma0.pool, minted=minted))

    ok, errors = check_invariants(broken)
    assert not ok
    assert any("Supply of t0'" in e for e in errors)


def test_invariants_catch_unregistered_minted_holding(gamma0):
    stray = Wallet("E", TokenMap({T1.minted(): 1.0}))
    minted = {T0: gamma0.pool.minted[T0]}
    broken = gamma0.with_wallet(stray).with_pool(replace(gamma0.pool, minted=minted))

    ok, errors = check_invariants(broken)
    assert not ok
    assert any("unregistered" in e for e in errors)


def test_unbounded_wallet():
    wallet = Wallet("liq01", unbounded_funds=True)
    assert wallet.balance(T1) == math.inf
    assert wallet.debit(T1, 1e12) is wallet
    assert wallet.credit(T0M, 5.0).balance(T0M) == 5.0


@pytest.mark.parametrize("kwargs", [
    {"c_min": 1.0},
    {"r_liq": 0.9},
    {"c_min": 1.2, "r_liq": 1.2},
    {"max_liq": 0.0},
    {"max_liq": 1.5},
    {"interest_rate": -0.01},
])
def test_invalid_params(kwargs):
    with pytest.raises(ConfigInvalid):
        LpParams(**kwargs)
