"""
Geometric Brownian Motion
Seeded, correlated price paths for a collateral/loan asset pair
"""

from dataclasses import dataclass
from typing import Dict, Union

import numpy as np
import pandas as pd

from ..core.errors import ConfigInvalid
from ..core.tokens import TokenId

# Trimester used both as estimation window and simulation horizon, in years
TRIMESTER = 91 / 365
DEFAULT_HORIZON = 91

# Sampling period of the closes GBM parameters are estimated from, in years
DAY = 1 / 365

ArrayLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class GbmParams:
    """
    GBM parameters

    Attributes:
        mu: Drift per unit time
        sigma: Volatility per square-root unit time
        p0: Initial price in USD
    """

    mu: float
    sigma: float
    p0: float

    def __post_init__(self):
        if not self.sigma >= 0:
            raise ConfigInvalid(f"sigma must be >= 0, got {self.sigma}")
        if not self.p0 > 0:
            raise ConfigInvalid(f"p0 must be > 0, got {self.p0}")


def process_coefficients(
    params: GbmParams,
    period: float = TRIMESTER,
    sampling: float = DAY,
) -> GbmParams:
    """
    Continuous-time coefficients of an estimated parameter set

    Estimated parameters describe the log returns of closes taken every
    sampling years: mean mu and standard deviation sigma * sqrt(period).
    The returned coefficients reproduce exactly that distribution when
    gbm_step is called with dt = sampling.

    Args:
        params: Estimated drift, volatility and initial price
        period: Window the volatility was scaled by, in years
        sampling: Spacing of the closes, in years

    Returns:
        GbmParams with drift and volatility per year
    """
    if not (period > 0 and sampling > 0):
        raise ConfigInvalid("period and sampling must be positive")
    vol = params.sigma * np.sqrt(period / sampling)
    return GbmParams(
        mu=params.mu / sampling + vol ** 2 / 2,
        sigma=float(vol),
        p0=params.p0,
    )


def _log_increment(params: GbmParams, dt: float, eps: ArrayLike) -> ArrayLike:
    return (params.mu - params.sigma ** 2 / 2) * dt + params.sigma * eps * np.sqrt(dt)


def gbm_step(p: ArrayLike, params: GbmParams, dt: float, eps: ArrayLike) -> ArrayLike:
    """
    Advance a price by one GBM step

    Args:
        p: Current price(s), positive
        params: Drift and volatility
        dt: Time step, positive
        eps: Standard normal shock(s)

    Returns:
        p * exp((mu - sigma^2/2) * dt + sigma * eps * sqrt(dt))
    """
    return p * np.exp(_log_increment(params, dt, eps))


def correlated_normals(eps: np.ndarray, eps2: np.ndarray, rho: float) -> np.ndarray:
    """Shock correlated with eps at coefficient rho: rho*eps + sqrt(1-rho^2)*eps2"""
    return rho * eps + np.sqrt(1.0 - rho ** 2) * eps2


@dataclass(frozen=True)
class PricePath:
    """
    Per-round prices of a collateral/loan pair

    prices has shape (horizon + 1, 2): column 0 collateral, column 1 loan,
    row 0 the initial prices.
    """

    collateral: TokenId
    loan: TokenId
    prices: np.ndarray

    @property
    def horizon(self) -> int:
        return len(self.prices) - 1

    def at(self, round_index: int) -> Dict[TokenId, float]:
        row = self.prices[round_index]
        return {self.collateral: float(row[0]), self.loan: float(row[1])}

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame(
            self.prices,
            columns=[f"price_{self.collateral}", f"price_{self.loan}"],
        )
        frame.index.name = "round"
        return frame


def _accumulate(p0: float, params: GbmParams, dt: float, eps: np.ndarray) -> np.ndarray:
    # Sequential products, bit-identical to chaining gbm_step round by round
    factors = np.exp(_log_increment(params, dt, eps))
    return np.multiply.accumulate(np.concatenate(([p0], factors)))


def generate_path(spec, seed: int) -> PricePath:
    """
    Generate one correlated price path for a scenario

    One pair of standard normals is drawn per round from a PCG64 generator
    seeded with seed; the collateral asset moves with the first draw and the
    loan asset with rho*eps + sqrt(1-rho^2)*eps2. Both assets follow the
    process_coefficients of their estimated parameters, so with dt = DAY a
    round's log return has mean mu and standard deviation sigma*sqrt(91/365).

    Args:
        spec: ScenarioSpec describing both assets
        seed: Non-negative 64-bit seed

    Returns:
        PricePath with spec.horizon + 1 rows
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    shocks = rng.standard_normal((spec.horizon, 2))

    eps = shocks[:, 0]
    eps_loan = correlated_normals(eps, shocks[:, 1], spec.rho)

    collateral = process_coefficients(spec.collateral_params)
    loan = process_coefficients(spec.loan_params)
    prices = np.column_stack([
        _accumulate(collateral.p0, collateral, spec.dt, eps),
        _accumulate(loan.p0, loan, spec.dt, eps_loan),
    ])
    return PricePath(spec.collateral, spec.loan, prices)
