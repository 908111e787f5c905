"""
Running Example
Three liquidations by D against borrowers A, B and C, replayed in every order
"""

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Sequence, Tuple

import pandas as pd

from ..core.errors import LendingPoolError
from ..core.state import LpParams, LpState, Wallet, build_state, collateralization
from ..core.tokens import TokenId, TokenMap
from ..core.transitions import Action, ActionKind, run_trace

logger = logging.getLogger(__name__)

T0 = TokenId.free("t0")
T1 = TokenId.free("t1")
T0M = T0.minted()
T1M = T1.minted()

LIQUIDATOR = "D"
BORROWERS = ("A", "B", "C")

EXAMPLE_PARAMS = LpParams(c_min=1.5, r_liq=1.1, max_liq=1.0, interest_rate=0.0)

EXAMPLE_LIQUIDATIONS: Dict[str, Action] = {
    "A": Action(ActionKind.LIQUIDATE, LIQUIDATOR, 50.0, T1, "A", T0M),
    "B": Action(ActionKind.LIQUIDATE, LIQUIDATOR, 1000 / 11, T1, "B", T0M),
    "C": Action(ActionKind.LIQUIDATE, LIQUIDATOR, 1000 / 11, T1, "C", T0M),
}

# Executed liquidations -> state name
STATE_NAMES: Dict[FrozenSet[str], str] = {
    frozenset(): "Γ0",
    frozenset("A"): "Γ1,1",
    frozenset("B"): "Γ1,2",
    frozenset("C"): "Γ1,3",
    frozenset("AB"): "Γ2,1",
    frozenset("AC"): "Γ2,2",
    frozenset("BC"): "Γ2,3",
    frozenset("ABC"): "Γ3,1",
}
FINAL_STATE = "Γ3,1"

CELLS = [
    "funds_t1",
    "loan_A", "loan_B", "loan_C",
    "A_t1", "A_t0'", "B_t1", "B_t0'", "C_t1", "C_t0'",
    "D_t1", "D_t0'", "D_t1'",
    "C(A)", "C(B)", "C(C)",
]

# Integer-rounded table of the example; D's t1 balance after one of the
# B/C liquidations is 409.09, so those rows carry 409
EXPECTED_TABLE: Dict[str, List[float]] = {
    "Γ0":   [195, 80, 100, 125, 80, 100, 100, 100, 125, 100, 500, 0, 500, 1.25, 1, 0.8],
    "Γ1,1": [245, 30, 100, 125, 80, 45, 100, 100, 125, 100, 450, 55, 500, 1.5, 1, 0.8],
    "Γ1,2": [286, 80, 9, 125, 80, 100, 100, 0, 125, 100, 409, 100, 500, 1.25, 0, 0.8],
    "Γ1,3": [286, 80, 100, 34, 80, 100, 100, 100, 125, 0, 409, 100, 500, 1.25, 1, 0],
    "Γ2,1": [336, 30, 9, 125, 80, 45, 100, 0, 125, 100, 359, 155, 500, 1.5, 0, 0.8],
    "Γ2,2": [336, 30, 100, 34, 80, 45, 100, 100, 125, 0, 359, 155, 500, 1.5, 1, 0],
    "Γ2,3": [377, 80, 9, 34, 80, 100, 100, 0, 125, 0, 318, 200, 500, 1.25, 0, 0],
    "Γ3,1": [427, 30, 9, 34, 80, 45, 100, 0, 125, 0, 268, 255, 500, 1.5, 0, 0],
}


def running_example_state() -> LpState:
    """
    Initial state Γ0

    All prices are 1. The pool's t0 funds (300) match the t0' supply so
    the exchange rate of t0' is 1.
    """
    wallets = [
        Wallet("A", TokenMap({T1: 80.0, T0M: 100.0})),
        Wallet("B", TokenMap({T1: 100.0, T0M: 100.0})),
        Wallet("C", TokenMap({T1: 125.0, T0M: 100.0})),
        Wallet("D", TokenMap({T1: 500.0, T1M: 500.0})),
    ]
    return build_state(
        wallets,
        prices={T0: 1.0, T1: 1.0},
        params=EXAMPLE_PARAMS,
        funds={T0: 300.0, T1: 195.0},
        loans={"A": {T1: 80.0}, "B": {T1: 100.0}, "C": {T1: 125.0}},
    )


def table_row(s: LpState) -> Dict[str, float]:
    """The example table's cells read off a state"""
    row = {"funds_t1": s.pool.funds.amount(T1)}
    for agent in BORROWERS:
        row[f"loan_{agent}"] = s.pool.loans_of(agent).amount(T1)
    for agent in BORROWERS:
        row[f"{agent}_t1"] = s.wallet(agent).balance(T1)
        row[f"{agent}_t0'"] = s.wallet(agent).balance(T0M)
    row["D_t1"] = s.wallet(LIQUIDATOR).balance(T1)
    row["D_t0'"] = s.wallet(LIQUIDATOR).balance(T0M)
    row["D_t1'"] = s.wallet(LIQUIDATOR).balance(T1M)
    for agent in BORROWERS:
        row[f"C({agent})"] = collateralization(s, agent)
    return row


def compare_row(
    name: str,
    observed: Dict[str, float],
    tolerance: float = 0.5,
) -> List[Tuple[str, str, float, float]]:
    """(state, cell, observed, expected) for every cell off by more than tolerance"""
    expected = dict(zip(CELLS, EXPECTED_TABLE[name]))
    return [
        (name, cell, observed[cell], expected[cell])
        for cell in CELLS
        if not abs(observed[cell] - expected[cell]) <= tolerance
    ]


@dataclass
class TraceReport:
    order: Tuple[str, ...]
    states: List[Tuple[str, LpState]]
    mismatches: List[Tuple[str, str, float, float]] = field(default_factory=list)
    error: str = ""

    @property
    def final_name(self) -> str:
        return self.states[-1][0]

    @property
    def passed(self) -> bool:
        return not self.error and not self.mismatches and self.final_name == FINAL_STATE

    def label(self) -> str:
        return " -> ".join(str(EXAMPLE_LIQUIDATIONS[b]) for b in self.order)


@dataclass
class ReplayReport:
    traces: List[TraceReport]
    finals_agree: bool

    @property
    def passed(self) -> int:
        return sum(trace.passed for trace in self.traces)

    @property
    def ok(self) -> bool:
        return self.finals_agree and self.passed == len(self.traces)

    def summary(self) -> str:
        return f"{self.passed}/{len(self.traces)} traces converge to {FINAL_STATE}"

    def diff_frame(self) -> pd.DataFrame:
        """Per-state table of every mismatching cell"""
        rows = [
            {"trace": trace.label(), "state": state, "cell": cell,
             "observed": observed, "expected": expected}
            for trace in self.traces
            for state, cell, observed, expected in trace.mismatches
        ]
        return pd.DataFrame(rows, columns=["trace", "state", "cell", "observed", "expected"])


def replay_order(
    init: LpState,
    order: Sequence[str],
    tolerance: float = 0.5,
) -> TraceReport:
    """Execute the liquidations of the given borrowers in order and check every state"""
    report = TraceReport(tuple(order), [("Γ0", init)])
    try:
        trace = run_trace(init, [EXAMPLE_LIQUIDATIONS[b] for b in order])
    except LendingPoolError as e:
        report.error = f"{type(e).__name__}: {e}"
        logger.error(f"Trace {order} failed: {report.error}")
        return report

    report.mismatches.extend(compare_row("Γ0", table_row(init), tolerance))
    for step, (_, state) in enumerate(trace, start=1):
        name = STATE_NAMES[frozenset(order[:step])]
        report.states.append((name, state))
        report.mismatches.extend(compare_row(name, table_row(state), tolerance))
    return report


def _same_state(a: LpState, b: LpState) -> bool:
    row_a, row_b = table_row(a), table_row(b)
    return all(
        math.isclose(row_a[c], row_b[c], rel_tol=1e-9, abs_tol=1e-9) for c in CELLS
    )


def replay_all_orders(tolerance: float = 0.5) -> ReplayReport:
    """
    Replay the three liquidations in all six orders from Γ0

    Returns:
        ReplayReport; finals_agree holds when every trace ends in the same
        state up to floating-point rounding
    """
    init = running_example_state()
    traces = [replay_order(init, order, tolerance) for order in itertools.permutations(BORROWERS)]

    finals = [trace.states[-1][1] for trace in traces if not trace.error]
    finals_agree = len(finals) == len(traces) and all(_same_state(finals[0], f) for f in finals[1:])

    report = ReplayReport(traces, finals_agree)
    logger.info(report.summary())
    return report
