"""
Initial Configurations
Borrower ladder, lender and liquidators for one scenario
"""

import logging
import math
from dataclasses import dataclass
from typing import List, Optional

from ..config.loader import ExperimentConfig, PopulationConfig
from ..core.errors import ConfigInvalid
from ..core.state import LpParams, LpState, Wallet, build_state, check_invariants
from ..core.tokens import AgentId, TokenMap
from ..pricing.scenarios import ScenarioSpec

logger = logging.getLogger(__name__)

LENDER = "lender"


def _ids(prefix: str, count: int) -> List[AgentId]:
    width = max(2, len(str(count)))
    return [f"{prefix}{i:0{width}d}" for i in range(1, count + 1)]


def borrower_ids(count: int) -> List[AgentId]:
    return _ids("b", count)


def liquidator_ids(count: int) -> List[AgentId]:
    return _ids("liq", count)


def populate_state(
    population: PopulationConfig,
    scenario: ScenarioSpec,
    params: LpParams,
) -> LpState:
    """
    Build the initial state of an experiment

    Borrower b_i owes loan_value USD of the scenario's loan token and holds
    minted collateral worth C_i * loan_value, with C_i read off the ladder.
    The pool holds exactly the collateral backing and a lender holds the
    loan token's minted supply, so both exchange rates start at 1.
    Liquidators get unbounded funds.

    Raises:
        ConfigInvalid: if the population cannot produce a valid state
    """
    errors = []
    if population.borrowers < 1:
        errors.append(f"borrowers must be positive, got {population.borrowers}")
    if population.liquidators < 1:
        errors.append(f"liquidators must be positive, got {population.liquidators}")
    if population.ladder_start < 1.0:
        errors.append(f"ladder_start must be >= 1.0, got {population.ladder_start}")
    if population.ladder_step < 0:
        errors.append(f"ladder_step must be >= 0, got {population.ladder_step}")
    if not (population.loan_value > 0 and math.isfinite(population.loan_value)):
        errors.append(f"loan_value must be positive, got {population.loan_value}")
    if errors:
        raise ConfigInvalid("; ".join(errors))

    coll, loan = scenario.collateral, scenario.loan
    p_coll, p_loan = scenario.collateral_params.p0, scenario.loan_params.p0
    loan_units = population.loan_value / p_loan

    wallets = []
    loans = {}
    collateral_total = 0.0
    for borrower, c in zip(borrower_ids(population.borrowers), population.ladder()):
        minted_units = c * population.loan_value / p_coll
        collateral_total += minted_units
        wallets.append(Wallet(borrower, TokenMap({loan: loan_units, coll.minted(): minted_units})))
        loans[borrower] = {loan: loan_units}

    wallets.append(Wallet(LENDER, TokenMap({loan.minted(): loan_units * population.borrowers})))
    wallets.extend(
        Wallet(liquidator, unbounded_funds=True)
        for liquidator in liquidator_ids(population.liquidators)
    )

    state = build_state(
        wallets,
        prices={coll: p_coll, loan: p_loan},
        params=params,
        funds={coll: collateral_total, loan: 0.0},
        loans=loans,
    )

    ok, invariant_errors = check_invariants(state)
    if not ok:
        raise ConfigInvalid(f"Initial state violates invariants: {invariant_errors}")

    logger.debug(
        f"Initial state for {scenario.name}: {population.borrowers} borrowers, "
        f"{population.liquidators} liquidators, CMin={params.c_min}, Rliq={params.r_liq}"
    )
    return state


def build_initial_state(
    cfg: ExperimentConfig,
    scenario: ScenarioSpec,
    params: Optional[LpParams] = None,
) -> LpState:
    """
    Initial state for a scenario under the configured population

    Args:
        cfg: Experiment configuration
        scenario: Scenario providing the two tokens and their initial prices
        params: LP parameters (default: cfg.lp)

    Returns:
        LpState satisfying every lp-core invariant
    """
    return populate_state(cfg.population, scenario, params or cfg.lp)


@dataclass(frozen=True)
class PopulationStateBuilder:
    """Picklable (scenario, params) -> LpState callable for sweep workers"""

    population: PopulationConfig

    def __call__(self, scenario: ScenarioSpec, params: LpParams) -> LpState:
        return populate_state(self.population, scenario, params)
