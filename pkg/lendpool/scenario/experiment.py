"""
Experiment Assembly
Scenario specs and GBM parameter tables resolved from the configuration
"""

import logging
from pathlib import Path
from typing import Dict, List, Optional, Union

from ..config.loader import ExperimentConfig
from ..data_ingest import PriceHistoryLoader, PriceHistoryValidator
from ..pricing.estimation import estimate_from_frame
from ..pricing.gbm import GbmParams
from ..pricing.scenarios import DEFAULT_GBM_TABLE, ScenarioSpec, build_scenario

logger = logging.getLogger(__name__)


def resolve_gbm_table(
    cfg: ExperimentConfig,
    fixtures_dir: Optional[Union[str, Path]] = None,
) -> Dict[str, GbmParams]:
    """
    GBM parameters per asset symbol

    Precedence, lowest first: the built-in table, parameters estimated from
    the configured asset CSVs, explicit scenarios.gbm entries. Estimated
    assets keep the built-in P0 when the symbol has one.

    Args:
        cfg: Experiment configuration
        fixtures_dir: Directory relative CSV paths resolve against
            (default: cfg.fixtures_dir)
    """
    table = dict(DEFAULT_GBM_TABLE)

    if cfg.assets:
        loader = PriceHistoryLoader(fixtures_dir if fixtures_dir is not None else cfg.fixtures_dir)
        for symbol, path in sorted(cfg.assets.items()):
            history = loader.load(path)
            PriceHistoryValidator.check_outliers(history)
            p0 = table[symbol].p0 if symbol in table else None
            table[symbol] = estimate_from_frame(history, p0)
            logger.info(f"{symbol}: estimated {table[symbol]} from {path}")

    table.update(cfg.gbm_overrides)
    return table


def build_scenarios(
    cfg: ExperimentConfig,
    fixtures_dir: Optional[Union[str, Path]] = None,
    names: Optional[List[str]] = None,
) -> List[ScenarioSpec]:
    """ScenarioSpecs for the configured (or given) scenario names"""
    table = resolve_gbm_table(cfg, fixtures_dir)
    return [
        build_scenario(name, table, rho=cfg.rho, horizon=cfg.horizon)
        for name in (names if names is not None else cfg.scenarios)
    ]
