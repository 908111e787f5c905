import importlib.util
from datetime import datetime
from pathlib import Path

import pytest

from lendpool.data_ingest import PriceHistoryValidator
from lendpool.pricing import GbmParams, estimate_from_frame

SCRIPT = Path(__file__).resolve().parent.parent / "scripts" / "generate_sample_prices.py"


@pytest.fixture(scope="module")
def script():
    spec = importlib.util.spec_from_file_location("generate_sample_prices", SCRIPT)
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def test_history_ends_at_p0(script):
    df = script.generate_daily_closes(GbmParams(0.01, 0.1, 250.0), datetime(2021, 2, 3), seed=1)

    assert len(df) == 91
    assert df["date"].iloc[0] == "2021-02-03"
    assert df["close"].iloc[-1] == pytest.approx(250.0)
    ok, errors = PriceHistoryValidator.validate_history(df)
    assert ok, errors


def test_estimation_recovers_generating_params(script):
    params = GbmParams(0.0, 0.02, 100.0)
    df = script.generate_daily_closes(params, datetime(2021, 2, 3), days=20_000, seed=2)

    estimated = estimate_from_frame(df)
    assert estimated.sigma == pytest.approx(0.02, rel=0.05)
    assert estimated.mu == pytest.approx(0.0, abs=5e-4)
