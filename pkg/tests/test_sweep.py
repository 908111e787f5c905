import numpy as np
import pandas as pd
import pytest

from lendpool.analysis import (
    RESULT_COLUMNS,
    GridRule,
    Simulator,
    StatsParams,
    parse_grid,
    results_frame,
    summarize_sweep,
    sweep,
    validate_grid,
    write_results,
)
from lendpool.config.loader import PopulationConfig
from lendpool.core import LpParams
from lendpool.core.errors import InvalidGrid
from lendpool.pricing import build_scenario
from lendpool.scenario import PopulationStateBuilder

QUICK_STATS = StatsParams(delta=1e6, n_min=4, n_max=8, block=4)
GRID = [(1.5, 1.1), (1.3, 1.1)]


@pytest.fixture
def scenario():
    return build_scenario("ETH-WBTC", horizon=5)


@pytest.fixture
def builder():
    return PopulationStateBuilder(PopulationConfig(borrowers=3, liquidators=1))


def test_default_grid_has_ten_pairs():
    pairs = GridRule().pairs()

    assert len(pairs) == 10
    assert pairs[0] == (1.2, 1.1)
    assert pairs[-1] == (1.5, 1.4)
    assert all(r <= c - 0.1 + 1e-9 for c, r in pairs)


def test_parse_grid():
    assert parse_grid("1.5:1.1, 1.4:1.2") == [(1.5, 1.1), (1.4, 1.2)]


@pytest.mark.parametrize("text", ["", "1.5", "1.5:x", "1.5:1.1:1.0"])
def test_parse_grid_errors(text):
    with pytest.raises(InvalidGrid):
        parse_grid(text)


@pytest.mark.parametrize("pairs", [[(1.2, 1.15)], [(1.5, 1.0)], []])
def test_validate_grid_errors(pairs):
    with pytest.raises(InvalidGrid):
        validate_grid(pairs)


def test_boundary_pair_is_valid():
    assert validate_grid([(1.2, 1.1)]) == [(1.2, 1.1)]


def test_cells_follow_scenario_then_grid_order(scenario, builder):
    cells = sweep([scenario], GRID, QUICK_STATS, base_seed=42, build_state=builder)

    assert [(c.scenario, c.c_min, c.r_liq) for c in cells] == [
        ("ETH-WBTC", 1.5, 1.1),
        ("ETH-WBTC", 1.3, 1.1),
    ]
    for cell in cells:
        assert cell.borrowers == ("b01", "b02", "b03")
        assert cell.estimates.n == QUICK_STATS.n_min
        assert cell.estimates.mean.shape == (6, 3)
        assert cell.estimates.all_converged


def test_cell_seeds_are_disjoint(scenario, builder):
    cells = sweep([scenario], GRID, QUICK_STATS, base_seed=42, build_state=builder)

    init = builder(scenario, LpParams(c_min=1.3, r_liq=1.1))
    simulator = Simulator(scenario, init)
    # Second cell starts n_max seeds after the first
    expected = np.mean([simulator.observe(42 + 8 + i) for i in range(4)], axis=0)

    np.testing.assert_allclose(cells[1].estimates.mean, expected)
    assert cells[1].mean_series("b02") == pytest.approx(expected[:, 1])
    assert cells[1].estimate("b02", 5).mean == pytest.approx(expected[5, 1])


def test_results_csv_is_deterministic(tmp_path, scenario, builder):
    first = write_results(
        sweep([scenario], GRID, QUICK_STATS, base_seed=7, build_state=builder),
        tmp_path / "a.csv",
    )
    second = write_results(
        sweep([scenario], GRID, QUICK_STATS, base_seed=7, build_state=builder),
        tmp_path / "out" / "b.csv",
    )

    assert first.read_bytes() == second.read_bytes()
    lines = first.read_text().splitlines()
    assert lines[0] == ",".join(RESULT_COLUMNS)
    assert len(lines) == 1 + 2 * 6 * 3
    assert lines[1].startswith("ETH-WBTC,1.5,1.1,b01,0,")
    assert lines[1].endswith(",4,true")


def test_results_frame_layout(scenario, builder):
    cells = sweep([scenario], GRID[:1], QUICK_STATS, base_seed=1, build_state=builder)
    frame = results_frame(cells)

    assert list(frame.columns) == RESULT_COLUMNS
    assert frame["round"].tolist()[:4] == [0, 0, 0, 1]
    assert frame["borrower"].tolist()[:4] == ["b01", "b02", "b03", "b01"]
    assert results_frame([]).empty


def test_summary(scenario, builder):
    cells = sweep([scenario], GRID, QUICK_STATS, base_seed=3, build_state=builder)
    summary = summarize_sweep(cells)

    assert len(summary) == 6
    first = summary.iloc[0]
    series = cells[0].mean_series("b01")
    assert first["min_mean_c"] == pytest.approx(series.min())
    assert first["final_mean_c"] == pytest.approx(series[-1])


def test_empty_grid_rejected(scenario, builder):
    with pytest.raises(InvalidGrid):
        sweep([scenario], [], QUICK_STATS, base_seed=0, build_state=builder)


@pytest.mark.slow
def test_worker_processes_match_in_process_run(scenario, builder):
    serial = sweep([scenario], GRID, QUICK_STATS, base_seed=5, build_state=builder)
    parallel = sweep([scenario], GRID, QUICK_STATS, base_seed=5, build_state=builder, workers=2)

    pd.testing.assert_frame_equal(results_frame(serial), results_frame(parallel))
