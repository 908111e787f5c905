import pytest

from lendpool.core import check_invariants, liquidate
from lendpool.scenario.running_example import (
    CELLS,
    EXPECTED_TABLE,
    FINAL_STATE,
    LIQUIDATOR,
    T0M,
    T1,
    compare_row,
    replay_all_orders,
    replay_order,
    running_example_state,
    table_row,
)


def test_initial_row_matches_table(gamma0):
    assert compare_row("Γ0", table_row(gamma0)) == []


def test_all_six_orders_reach_the_same_final_state():
    report = replay_all_orders()

    assert len(report.traces) == 6
    assert report.finals_agree
    assert report.ok
    assert report.summary() == f"6/6 traces converge to {FINAL_STATE}"
    assert report.diff_frame().empty


@pytest.mark.parametrize("order", [("A", "B", "C"), ("C", "B", "A"), ("B", "A", "C")])
def test_every_intermediate_state_matches(order):
    trace = replay_order(running_example_state(), order)

    assert trace.passed, trace.mismatches or trace.error
    assert [name for name, _ in trace.states][-1] == FINAL_STATE
    for _, state in trace.states:
        ok, errors = check_invariants(state)
        assert ok, errors


def test_final_state_cells():
    trace = replay_order(running_example_state(), ("A", "B", "C"))
    final = table_row(trace.states[-1][1])

    assert final["funds_t1"] == pytest.approx(195 + 50 + 2000 / 11)
    assert final["D_t0'"] == pytest.approx(255.0)
    assert final["loan_A"] == pytest.approx(30.0)
    assert final["C(A)"] == pytest.approx(1.5)


def test_tight_tolerance_reports_rounded_cells():
    trace = replay_order(running_example_state(), ("B",), tolerance=0.01)

    cells = {cell for _, cell, _, _ in trace.mismatches}
    assert "loan_B" in cells
    assert not trace.passed


def test_failed_trace_is_reported(gamma0):
    after_a = liquidate(gamma0, LIQUIDATOR, "A", 50.0, T1, T0M)
    trace = replay_order(after_a, ("A",))

    assert trace.error.startswith("BorrowerSafe")
    assert not trace.passed


def test_table_covers_every_cell():
    for row in EXPECTED_TABLE.values():
        assert len(row) == len(CELLS)
