"""Random action sequences never create or destroy free tokens"""

import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from lendpool.core import Action, ActionKind, apply_action, check_invariants, free_token_totals
from lendpool.core.errors import TransitionError

from .strategies import AGENTS, FREE_TOKENS, MINTED_TOKENS, amounts, lp_states, snapshot

FIRED_BY_AGENT = [
    ActionKind.DEPOSIT,
    ActionKind.REDEEM,
    ActionKind.BORROW,
    ActionKind.REPAY,
    ActionKind.LIQUIDATE,
]


@st.composite
def actions(draw):
    kind = draw(st.sampled_from(FIRED_BY_AGENT + [ActionKind.INTEREST]))
    if kind is ActionKind.INTEREST:
        return Action(kind)

    agent = draw(st.sampled_from(AGENTS))
    amount = draw(amounts)
    if kind is ActionKind.REDEEM:
        return Action(kind, agent, amount, draw(st.sampled_from(MINTED_TOKENS)))
    if kind is ActionKind.LIQUIDATE:
        return Action(
            kind,
            agent,
            amount,
            draw(st.sampled_from(FREE_TOKENS)),
            borrower=draw(st.sampled_from(AGENTS)),
            seize_token=draw(st.sampled_from(MINTED_TOKENS)),
        )
    return Action(kind, agent, amount, draw(st.sampled_from(FREE_TOKENS)))


def assert_same_totals(before, after):
    for tau in set(before) | set(after):
        assert after.get(tau, 0.0) == pytest.approx(before.get(tau, 0.0), rel=1e-9, abs=1e-9)


def run_sequence(state, sequence):
    totals = free_token_totals(state)
    for action in sequence:
        before = snapshot(state)
        try:
            state = apply_action(state, action)
        except TransitionError:
            # Rejected actions leave the input untouched
            assert snapshot(state) == before
            continue

        ok, errors = check_invariants(state)
        assert ok, (str(action), errors)
        assert_same_totals(totals, free_token_totals(state))


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(lp_states(), st.lists(actions(), max_size=12))
def test_free_tokens_conserved(state, sequence):
    run_sequence(state, sequence)


@pytest.mark.slow
@settings(max_examples=10_000, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(lp_states(), st.lists(actions(), max_size=12))
def test_free_tokens_conserved_long_run(state, sequence):
    run_sequence(state, sequence)


@given(lp_states(), st.data())
@settings(max_examples=100, deadline=None, suppress_health_check=[HealthCheck.too_slow])
def test_price_update_keeps_totals(state, data):
    new_prices = {
        tau: data.draw(st.integers(min_value=1, max_value=500).map(lambda x: x / 100))
        for tau in state.prices
    }
    after = apply_action(state, Action(ActionKind.PRICE, prices=new_prices))

    assert free_token_totals(after) == free_token_totals(state)
    assert after.pool == state.pool
    assert dict(after.prices) == new_prices
