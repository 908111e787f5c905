"""
Parameter Sweep
Monte-Carlo estimates over the (CMin, Rliq) grid for every scenario
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from ..core.errors import InvalidGrid
from ..core.state import LpParams, LpState
from ..core.tokens import AgentId, approx_le
from ..pricing.scenarios import ScenarioSpec
from .estimator import CiEstimate, EnsembleEstimate, StatsParams, estimate_means
from .simulator import DEFAULT_C_CAP, Simulator

logger = logging.getLogger(__name__)

RESULT_COLUMNS = [
    "scenario", "c_min", "r_liq", "borrower", "round",
    "mean_c", "ci_half_width", "n_sims", "converged",
]

GridPair = Tuple[float, float]
StateBuilder = Callable[[ScenarioSpec, LpParams], LpState]


@dataclass(frozen=True)
class GridRule:
    """
    (CMin, Rliq) grid: CMin from c_min_start to c_min_stop, Rliq from
    r_liq_start to CMin - r_liq_gap, both in steps of `step`
    """

    c_min_start: float = 1.2
    c_min_stop: float = 1.5
    step: float = 0.1
    r_liq_start: float = 1.1
    r_liq_gap: float = 0.1

    def pairs(self) -> List[GridPair]:
        if not self.step > 0:
            raise InvalidGrid(f"Grid step must be positive, got {self.step}")
        pairs = []
        c_count = int(round((self.c_min_stop - self.c_min_start) / self.step)) + 1
        for i in range(c_count):
            c_min = round(self.c_min_start + i * self.step, 10)
            r_count = int(round((c_min - self.r_liq_gap - self.r_liq_start) / self.step)) + 1
            for j in range(r_count):
                pairs.append((c_min, round(self.r_liq_start + j * self.step, 10)))
        return validate_grid(pairs, self.r_liq_start, self.r_liq_gap)


def parse_grid(text: str) -> List[GridPair]:
    """Parse `cmin:rliq[,cmin:rliq...]`"""
    pairs = []
    for item in filter(None, (part.strip() for part in text.split(","))):
        try:
            c_min, r_liq = (float(x) for x in item.split(":"))
        except ValueError:
            raise InvalidGrid(f"Grid entry {item!r} is not of the form cmin:rliq") from None
        pairs.append((c_min, r_liq))
    if not pairs:
        raise InvalidGrid(f"Empty grid {text!r}")
    return pairs


def validate_grid(
    pairs: Sequence[GridPair],
    r_liq_min: float = 1.1,
    r_liq_gap: float = 0.1,
) -> List[GridPair]:
    """
    Check r_liq_min <= Rliq <= CMin - r_liq_gap for every pair

    Raises:
        InvalidGrid: listing every offending pair
    """
    bad = [
        (c_min, r_liq) for c_min, r_liq in pairs
        if not (approx_le(r_liq_min, r_liq) and approx_le(r_liq, c_min - r_liq_gap))
    ]
    if bad:
        raise InvalidGrid(
            f"Pairs outside {r_liq_min} <= Rliq <= CMin - {r_liq_gap}: {bad}"
        )
    if not pairs:
        raise InvalidGrid("Grid is empty")
    return list(pairs)


@dataclass(frozen=True)
class SweepCell:
    """
    Estimates for one (scenario, CMin, Rliq) cell

    estimates is shaped (rounds, borrowers).
    """

    scenario: str
    c_min: float
    r_liq: float
    borrowers: Tuple[AgentId, ...]
    estimates: EnsembleEstimate

    def estimate(self, borrower: AgentId, round_index: int) -> CiEstimate:
        return self.estimates.at((round_index, self.borrowers.index(borrower)))

    def mean_series(self, borrower: AgentId) -> np.ndarray:
        return self.estimates.mean[:, self.borrowers.index(borrower)]

    def to_frame(self) -> pd.DataFrame:
        rounds, count = self.estimates.mean.shape
        return pd.DataFrame({
            "scenario": self.scenario,
            "c_min": self.c_min,
            "r_liq": self.r_liq,
            "borrower": [self.borrowers[j] for _ in range(rounds) for j in range(count)],
            "round": [r for r in range(rounds) for _ in range(count)],
            "mean_c": self.estimates.mean.ravel(),
            "ci_half_width": self.estimates.half_width.ravel(),
            "n_sims": self.estimates.n,
            "converged": self.estimates.converged.ravel(),
        }, columns=RESULT_COLUMNS)


@dataclass(frozen=True)
class CellTask:
    scenario: ScenarioSpec
    c_min: float
    r_liq: float
    lp_defaults: LpParams
    build_state: StateBuilder
    stats: StatsParams
    seed_base: int
    c_cap: float


def run_cell(task: CellTask) -> SweepCell:
    """Estimate every (borrower, round) observable of one cell"""
    params = LpParams(
        c_min=task.c_min,
        r_liq=task.r_liq,
        max_liq=task.lp_defaults.max_liq,
        interest_rate=task.lp_defaults.interest_rate,
    )
    init = task.build_state(task.scenario, params)
    simulator = Simulator(task.scenario, init, c_cap=task.c_cap)

    logger.info(
        f"Cell {task.scenario.name} CMin={task.c_min} Rliq={task.r_liq}: "
        f"seeds from {task.seed_base}"
    )
    estimates = estimate_means(lambda i: simulator.observe(task.seed_base + i), task.stats)
    logger.info(
        f"Cell {task.scenario.name} CMin={task.c_min} Rliq={task.r_liq}: "
        f"{estimates.n} simulations, converged={estimates.all_converged}"
    )
    return SweepCell(task.scenario.name, task.c_min, task.r_liq, simulator.observed, estimates)


def sweep(
    scenarios: Sequence[ScenarioSpec],
    grid: Iterable[GridPair],
    stats: StatsParams,
    base_seed: int,
    build_state: StateBuilder,
    lp_defaults: Optional[LpParams] = None,
    c_cap: float = DEFAULT_C_CAP,
    workers: int = 1,
) -> List[SweepCell]:
    """
    Run the sweep over scenarios x grid

    Cell k draws simulation seeds base_seed + k * n_max + i, so no two
    simulations of a sweep share a seed. Cells may run in worker processes;
    results come back in cell order regardless.

    Args:
        scenarios: Price scenarios
        grid: (CMin, Rliq) pairs
        stats: Stopping-rule parameters
        base_seed: First seed of the sweep
        build_state: Builds the initial state of a cell
        lp_defaults: Source of Maxliq and interest rate
        c_cap: Cap for infinite collateralization
        workers: Worker processes (1 runs in-process)

    Returns:
        SweepCells ordered by scenario, then grid order
    """
    pairs = list(grid)
    if not pairs:
        raise InvalidGrid("Grid is empty")
    lp_defaults = lp_defaults or LpParams()

    tasks = [
        CellTask(scenario, c_min, r_liq, lp_defaults, build_state, stats,
                 base_seed + index * stats.n_max, c_cap)
        for index, (scenario, (c_min, r_liq)) in enumerate(
            (scenario, pair) for scenario in scenarios for pair in pairs
        )
    ]
    logger.info(f"Sweeping {len(tasks)} cells with {workers} worker(s)")

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_cell, tasks))
    return [run_cell(task) for task in tasks]


def results_frame(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """All cells as one table with the results CSV columns"""
    if not cells:
        return pd.DataFrame(columns=RESULT_COLUMNS)
    return pd.concat([cell.to_frame() for cell in cells], ignore_index=True)


def write_results(cells: Sequence[SweepCell], path: Path) -> Path:
    """
    Write the results CSV

    Floats use 9 significant digits and converged is written as
    true/false, so equal inputs give byte-identical files.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame = results_frame(cells)
    frame["converged"] = frame["converged"].map({True: "true", False: "false"})
    frame.to_csv(path, index=False, float_format="%.9g", lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def summarize_sweep(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """Minimum over rounds of the mean collateralization, per cell and borrower"""
    rows = []
    for cell in cells:
        for j, borrower in enumerate(cell.borrowers):
            series = cell.estimates.mean[:, j]
            rows.append({
                "scenario": cell.scenario,
                "c_min": cell.c_min,
                "r_liq": cell.r_liq,
                "borrower": borrower,
                "min_mean_c": float(np.min(series)),
                "final_mean_c": float(series[-1]),
            })
    return pd.DataFrame(rows)
