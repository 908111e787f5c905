from pathlib import Path

import numpy as np
import pandas as pd
import pytest

from lendpool.config import parse_config
from lendpool.pricing import DEFAULT_GBM_TABLE, GbmParams, estimate_params
from lendpool.scenario import build_scenarios, resolve_gbm_table

SHIPPED_FIXTURES = Path(__file__).resolve().parent.parent / "data" / "fixtures"
CLOSES = [3000.0, 3100.0, 2950.0, 3050.0, 2990.0]


@pytest.fixture
def fixtures(tmp_path):
    dates = pd.date_range("2021-02-03", periods=len(CLOSES), freq="D").strftime("%Y-%m-%d")
    pd.DataFrame({"date": dates, "close": CLOSES}).to_csv(tmp_path / "ETH.csv", index=False)
    pd.DataFrame({"date": dates, "close": CLOSES}).to_csv(tmp_path / "NEW.csv", index=False)
    return tmp_path


def test_default_table_without_assets():
    assert resolve_gbm_table(parse_config("")) == DEFAULT_GBM_TABLE


def test_estimated_assets_keep_known_p0(fixtures):
    cfg = parse_config("data:\n  assets:\n    eth: ETH.csv\n    new: NEW.csv\n")
    table = resolve_gbm_table(cfg, fixtures)

    expected = estimate_params(np.array(CLOSES), p0=3269.08)
    assert table["ETH"] == expected
    assert table["NEW"].p0 == 2990.0
    assert table["WBTC"] == DEFAULT_GBM_TABLE["WBTC"]


def test_explicit_overrides_win(fixtures):
    cfg = parse_config(
        "data:\n  assets:\n    ETH: ETH.csv\n"
        "scenarios:\n  gbm:\n    ETH: {mu: 0.0, sigma: 0.2, p0: 10.0}\n"
    )
    assert resolve_gbm_table(cfg, fixtures)["ETH"] == GbmParams(0.0, 0.2, 10.0)


def test_build_scenarios_uses_resolved_table(fixtures):
    cfg = parse_config(
        "scenarios:\n  horizon: 7\n  gbm:\n    USDC: {mu: 0.0, sigma: 0.0, p0: 1.0}\n"
    )
    specs = build_scenarios(cfg, fixtures)

    assert [s.name for s in specs] == ["ETH-WBTC", "ETH-USDC", "USDC-WBTC"]
    assert specs[1].loan_params == GbmParams(0.0, 0.0, 1.0)
    assert all(s.horizon == 7 for s in specs)
    assert build_scenarios(cfg, fixtures, names=["usdc-wbtc"])[0].collateral_params.p0 == 1.0


def test_shipped_fixtures_reproduce_default_table():
    cfg = parse_config("data:\n  assets:\n    ETH: ETH.csv\n    USDC: USDC.csv\n    WBTC: WBTC.csv\n")
    table = resolve_gbm_table(cfg, SHIPPED_FIXTURES)

    for symbol, params in DEFAULT_GBM_TABLE.items():
        assert table[symbol].mu == pytest.approx(params.mu, rel=1e-3)
        assert table[symbol].sigma == pytest.approx(params.sigma, rel=1e-3)
        assert table[symbol].p0 == params.p0
