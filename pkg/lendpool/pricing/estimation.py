"""
GBM Parameter Estimation
Drift and volatility from historical closing prices
"""

import logging
from typing import Optional, Sequence

import numpy as np
import pandas as pd

from ..core.errors import NonPositivePrice, TooShort
from .gbm import TRIMESTER, GbmParams

logger = logging.getLogger(__name__)


def log_returns(closes: Sequence[float]) -> np.ndarray:
    """
    Daily log returns ln(C[i+1]) - ln(C[i])

    Args:
        closes: Closing prices in ascending date order

    Returns:
        Array one shorter than closes

    Raises:
        TooShort: if fewer than two closes are given
        NonPositivePrice: if any close is not positive
    """
    values = np.asarray(closes, dtype=float)
    if len(values) < 2:
        raise TooShort(f"Need at least 2 closes, got {len(values)}")
    if not np.all(values > 0):
        raise NonPositivePrice("Closing prices must be positive")
    return np.diff(np.log(values))


def estimate_params(
    closes: Sequence[float],
    p0: float,
    period: float = TRIMESTER,
) -> GbmParams:
    """
    Estimate GBM parameters from closing prices

    mu is the mean of the log returns; sigma is their sample standard
    deviation divided by sqrt(period), the annualisation constant of the
    sampling window. generate_path drives prices with process_coefficients
    of the result, which reproduces these returns one round per close.

    Args:
        closes: Closing prices, ascending dates, at least 3
        p0: Initial price for the generated paths
        period: Length of the sampling window in years (default 91/365)

    Returns:
        GbmParams(mu, sigma, p0)
    """
    if len(closes) < 3:
        raise TooShort(f"Need at least 3 closes to estimate volatility, got {len(closes)}")

    returns = log_returns(closes)
    mu = float(np.mean(returns))
    sigma = float(np.std(returns, ddof=1) / np.sqrt(period))

    logger.info(f"Estimated mu={mu:.6g}, sigma={sigma:.6g} from {len(closes)} closes")
    return GbmParams(mu=mu, sigma=sigma, p0=p0)


def estimate_from_frame(
    df: pd.DataFrame,
    p0: Optional[float] = None,
    period: float = TRIMESTER,
) -> GbmParams:
    """
    Estimate parameters from a `close` column

    Args:
        df: DataFrame with a close column, ascending dates
        p0: Initial price (default: the last close)
        period: Sampling window in years

    Returns:
        GbmParams
    """
    closes = df["close"].to_numpy(dtype=float)
    if p0 is None and len(closes):
        p0 = float(closes[-1])
    return estimate_params(closes, p0, period)
