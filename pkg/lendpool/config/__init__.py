"""Experiment configuration"""

from .defaults import DEFAULT_CONFIG
from .loader import (
    ConfigValidator,
    ExperimentConfig,
    PopulationConfig,
    dump_config,
    load_config,
    parse_config,
)

__all__ = [
    "DEFAULT_CONFIG",
    "ConfigValidator",
    "ExperimentConfig",
    "PopulationConfig",
    "dump_config",
    "load_config",
    "parse_config",
]
