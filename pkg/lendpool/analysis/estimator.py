"""
Sequential Mean Estimation
Student-t confidence intervals with an (alpha, delta) stopping rule
"""

import logging
from dataclasses import dataclass
from typing import Callable, Optional, Tuple, Union

import numpy as np
from scipy import stats

from ..core.errors import ConfigInvalid

logger = logging.getLogger(__name__)

Sample = Union[float, np.ndarray]


@dataclass(frozen=True)
class StatsParams:
    """
    Stopping-rule parameters

    Attributes:
        alpha: 1 - confidence level
        delta: Maximum full width of the confidence interval
        n_min: Samples drawn before the first check
        n_max: Sample budget
        block: Samples drawn between checks
    """

    alpha: float = 0.05
    delta: float = 0.1
    n_min: int = 30
    n_max: int = 5010
    block: int = 30

    def __post_init__(self):
        errors = []
        if not 0 < self.alpha < 1:
            errors.append(f"alpha must be in (0, 1), got {self.alpha}")
        if not self.delta > 0:
            errors.append(f"delta must be > 0, got {self.delta}")
        if not 2 <= self.n_min <= self.n_max:
            errors.append(f"need 2 <= n_min <= n_max, got {self.n_min}, {self.n_max}")
        if not self.block > 0:
            errors.append(f"block must be > 0, got {self.block}")
        if errors:
            raise ConfigInvalid("; ".join(errors))


@dataclass(frozen=True)
class CiEstimate:
    """
    Mean estimate with its confidence interval

    converged holds iff 2 * half_width <= delta.
    """

    mean: float
    half_width: float
    n: int
    alpha: float
    converged: bool

    @property
    def interval(self) -> Tuple[float, float]:
        return self.mean - self.half_width, self.mean + self.half_width


@dataclass(frozen=True)
class EnsembleEstimate:
    """Estimates for many observables sharing one simulation stream"""

    mean: np.ndarray
    half_width: np.ndarray
    converged: np.ndarray
    n: int
    alpha: float

    def at(self, index) -> CiEstimate:
        return CiEstimate(
            mean=float(np.asarray(self.mean)[index]),
            half_width=float(np.asarray(self.half_width)[index]),
            n=self.n,
            alpha=self.alpha,
            converged=bool(np.asarray(self.converged)[index]),
        )

    @property
    def all_converged(self) -> bool:
        return bool(np.all(self.converged))


class RunningMoments:
    """
    Element-wise running mean and sum of squared deviations

    Whole blocks are merged with the pairwise update, so the per-observable
    statistics never need the raw samples.
    """

    def __init__(self):
        self.n = 0
        self.mean: Optional[np.ndarray] = None
        self.m2: Optional[np.ndarray] = None

    def push_block(self, block: np.ndarray):
        count = block.shape[0]
        block_mean = block.mean(axis=0)
        block_m2 = ((block - block_mean) ** 2).sum(axis=0)

        if self.n == 0:
            self.n, self.mean, self.m2 = count, block_mean, block_m2
            return

        total = self.n + count
        diff = block_mean - self.mean
        self.mean = self.mean + diff * (count / total)
        self.m2 = self.m2 + block_m2 + diff ** 2 * (self.n * count / total)
        self.n = total

    def variance(self) -> np.ndarray:
        return self.m2 / (self.n - 1)

    def half_width(self, alpha: float) -> np.ndarray:
        quantile = stats.t.ppf(1 - alpha / 2, self.n - 1)
        return quantile * np.sqrt(self.variance() / self.n)


def estimate_means(
    sampler: Callable[[int], Sample],
    params: StatsParams = StatsParams(),
) -> EnsembleEstimate:
    """
    Estimate the means of all observables produced by a seeded sampler

    Draws n_min samples, then blocks of `block`, stopping once every
    observable's interval is at most delta wide or n_max is reached.

    Args:
        sampler: Maps a sample index (0, 1, 2, ...) to a float or an array
            of observables; deterministic in the index
        params: Stopping-rule parameters

    Returns:
        EnsembleEstimate shaped like one sample
    """
    moments = RunningMoments()
    target = params.n_min

    while True:
        block = np.stack([np.asarray(sampler(i), dtype=float) for i in range(moments.n, target)])
        moments.push_block(block)

        half_width = moments.half_width(params.alpha)
        converged = 2 * half_width <= params.delta
        logger.debug(
            f"n={moments.n}: widest interval {2 * float(np.max(half_width)):.4g} "
            f"(delta {params.delta})"
        )

        if np.all(converged) or moments.n >= params.n_max:
            break
        target = min(moments.n + params.block, params.n_max)

    if not np.all(converged):
        logger.warning(
            f"{int(np.size(converged) - np.count_nonzero(converged))} observables did not "
            f"reach delta={params.delta} within n_max={params.n_max}"
        )

    return EnsembleEstimate(
        mean=moments.mean,
        half_width=half_width,
        converged=converged,
        n=moments.n,
        alpha=params.alpha,
    )


def estimate_mean(
    sampler: Callable[[int], Sample],
    selector: Optional[Callable[[Sample], float]] = None,
    alpha: float = 0.05,
    delta: float = 0.1,
    n_min: int = 30,
    n_max: int = 5010,
    block: int = 30,
) -> CiEstimate:
    """
    Estimate the mean of one observable

    Args:
        sampler: Seeded simulation supplier, index -> sample
        selector: Extracts the observable from a sample (default: identity)
        alpha: 1 - confidence level
        delta: Maximum interval width
        n_min: Samples before the first check
        n_max: Sample budget
        block: Samples between checks

    Returns:
        CiEstimate; non-convergence is reported, not raised
    """
    params = StatsParams(alpha=alpha, delta=delta, n_min=n_min, n_max=n_max, block=block)
    pick = selector or (lambda sample: sample)
    ensemble = estimate_means(lambda i: float(pick(sampler(i))), params)
    return ensemble.at(())
