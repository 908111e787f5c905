"""
Price Scenarios
Collateral/loan asset pairs whose prices move in opposite directions
"""

from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

from ..core.errors import ConfigInvalid
from ..core.tokens import TokenId
from .gbm import DAY, DEFAULT_HORIZON, GbmParams

# Parameters estimated from one trimester of closes per asset; P0 is the
# USD price on 2021-05-05
DEFAULT_GBM_TABLE: Dict[str, GbmParams] = {
    "ETH": GbmParams(mu=-0.012, sigma=0.12, p0=3269.08),
    "USDC": GbmParams(mu=-7.84e-5, sigma=0.005, p0=0.99),
    "WBTC": GbmParams(mu=0.012, sigma=0.094, p0=57260.0),
}

# scenario -> (collateral asset, loan asset)
SCENARIO_PAIRS: Dict[str, tuple] = {
    "ETH-WBTC": ("ETH", "WBTC"),    # declining vs increasing
    "ETH-USDC": ("ETH", "USDC"),    # declining vs constant
    "USDC-WBTC": ("USDC", "WBTC"),  # constant vs increasing
}


@dataclass(frozen=True)
class ScenarioSpec:
    """
    One price evolution scenario

    Attributes:
        name: Scenario name, e.g. ETH-WBTC
        collateral: Free token used as collateral
        collateral_params: GBM parameters of the collateral asset
        loan: Free token borrowed
        loan_params: GBM parameters of the loan asset
        rho: Correlation between the two assets' shocks
        horizon: Number of rounds
        dt: Time step in years; defaults to one day, the spacing of the
            closes the parameters were estimated from
    """

    name: str
    collateral: TokenId
    collateral_params: GbmParams
    loan: TokenId
    loan_params: GbmParams
    rho: float = -1.0
    horizon: int = DEFAULT_HORIZON
    dt: Optional[float] = field(default=None)

    def __post_init__(self):
        if self.collateral == self.loan:
            raise ConfigInvalid(f"{self.name}: collateral and loan tokens must differ")
        if self.collateral.is_minted or self.loan.is_minted:
            raise ConfigInvalid(f"{self.name}: scenario assets must be free tokens")
        if not -1 <= self.rho <= 1:
            raise ConfigInvalid(f"{self.name}: rho must be in [-1, 1], got {self.rho}")
        if not self.horizon > 0:
            raise ConfigInvalid(f"{self.name}: horizon must be positive")
        if self.dt is None:
            object.__setattr__(self, "dt", DAY)
        elif not self.dt > 0:
            raise ConfigInvalid(f"{self.name}: dt must be positive")


def normalize_scenario_name(name: str) -> str:
    key = name.strip().upper()
    if key not in SCENARIO_PAIRS:
        raise ConfigInvalid(
            f"Unknown scenario {name!r}; expected one of {sorted(SCENARIO_PAIRS)}"
        )
    return key


def build_scenario(
    name: str,
    params_table: Optional[Mapping[str, GbmParams]] = None,
    rho: float = -1.0,
    horizon: int = DEFAULT_HORIZON,
) -> ScenarioSpec:
    """
    Scenario spec for one of the named asset pairs

    Args:
        name: ETH-WBTC, ETH-USDC or USDC-WBTC (case-insensitive)
        params_table: Asset symbol -> GbmParams (default DEFAULT_GBM_TABLE)
        rho: Shock correlation between the pair
        horizon: Number of rounds

    Returns:
        ScenarioSpec
    """
    key = normalize_scenario_name(name)
    table = dict(DEFAULT_GBM_TABLE)
    table.update(params_table or {})
    collateral, loan = SCENARIO_PAIRS[key]

    return ScenarioSpec(
        name=key,
        collateral=TokenId.free(collateral),
        collateral_params=table[collateral],
        loan=TokenId.free(loan),
        loan_params=table[loan],
        rho=rho,
        horizon=horizon,
    )
