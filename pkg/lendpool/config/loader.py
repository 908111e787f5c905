"""
Experiment Configuration
Loads, validates and serializes the YAML experiment file
"""

import copy
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import yaml

from ..analysis.estimator import StatsParams
from ..analysis.sweep import GridPair, GridRule, validate_grid
from ..core.errors import ConfigInvalid, ParseError, ValidationError
from ..core.state import LpParams
from ..pricing.gbm import GbmParams
from ..pricing.scenarios import normalize_scenario_name
from .defaults import DEFAULT_CONFIG, FREE_FORM_KEYS, LOG_LEVELS

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PopulationConfig:
    """
    Initial agents

    Borrower i (1-based) starts at collateralization
    ladder_start + ladder_step * (i - 1) with a loan worth loan_value USD.
    """

    ladder_start: float = 1.0
    ladder_step: float = 0.1
    borrowers: int = 10
    liquidators: int = 3
    loan_value: float = 10000.0

    def ladder(self) -> List[float]:
        return [self.ladder_start + self.ladder_step * i for i in range(self.borrowers)]


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated experiment configuration"""

    scenarios: Tuple[str, ...]
    rho: float
    horizon: int
    gbm_overrides: Dict[str, GbmParams]
    grid: GridRule
    grid_pairs: Optional[Tuple[GridPair, ...]]
    stats: StatsParams
    lp: LpParams
    c_cap: float
    population: PopulationConfig
    seed: int
    fixtures_dir: str
    assets: Dict[str, str] = field(default_factory=dict)
    results_path: str = "results/sweep_results.csv"
    summary_path: str = "results/sweep_summary.csv"
    simulation_path: str = "results/simulation.csv"
    log_level: str = "INFO"
    log_file: Optional[str] = None
    workers: int = 1

    def pairs(self) -> List[GridPair]:
        """Grid pairs: the explicit list when given, else the rule's"""
        if self.grid_pairs is not None:
            return validate_grid(self.grid_pairs, self.grid.r_liq_start, self.grid.r_liq_gap)
        return self.grid.pairs()

    @classmethod
    def from_dict(cls, config: Dict[str, Any]) -> "ExperimentConfig":
        """Build from a complete, validated configuration dictionary"""
        sc, grid, st, lp = config['scenarios'], config['grid'], config['stats'], config['lp']
        pop, out, log = config['population'], config['output'], config['logging']

        return cls(
            scenarios=tuple(normalize_scenario_name(name) for name in sc['names']),
            rho=float(sc['rho']),
            horizon=int(sc['horizon']),
            gbm_overrides={
                symbol.upper(): GbmParams(float(p['mu']), float(p['sigma']), float(p['p0']))
                for symbol, p in sc['gbm'].items()
            },
            grid=GridRule(
                c_min_start=float(grid['c_min_start']),
                c_min_stop=float(grid['c_min_stop']),
                step=float(grid['step']),
                r_liq_start=float(grid['r_liq_start']),
                r_liq_gap=float(grid['r_liq_gap']),
            ),
            grid_pairs=(
                None if grid['pairs'] is None
                else tuple((float(c), float(r)) for c, r in grid['pairs'])
            ),
            stats=StatsParams(
                alpha=float(st['alpha']),
                delta=float(st['delta']),
                n_min=int(st['n_min']),
                n_max=int(st['n_max']),
                block=int(st['block']),
            ),
            lp=LpParams(
                c_min=float(lp['c_min']),
                r_liq=float(lp['r_liq']),
                max_liq=float(lp['max_liq']),
                interest_rate=float(lp['interest_rate']),
            ),
            c_cap=float(lp['c_cap']),
            population=PopulationConfig(
                ladder_start=float(pop['ladder_start']),
                ladder_step=float(pop['ladder_step']),
                borrowers=int(pop['borrowers']),
                liquidators=int(pop['liquidators']),
                loan_value=float(pop['loan_value']),
            ),
            seed=int(config['seed']),
            fixtures_dir=str(config['data']['fixtures_dir']),
            assets={symbol.upper(): str(path) for symbol, path in config['data']['assets'].items()},
            results_path=str(out['results']),
            summary_path=str(out['summary']),
            simulation_path=str(out['simulation']),
            log_level=str(log['level']).upper(),
            log_file=log['file'],
            workers=int(config['execution']['workers']),
        )

    def to_dict(self) -> Dict[str, Any]:
        """Plain dictionary in config-file layout"""
        return {
            'scenarios': {
                'names': list(self.scenarios),
                'rho': self.rho,
                'horizon': self.horizon,
                'gbm': {
                    symbol: {'mu': p.mu, 'sigma': p.sigma, 'p0': p.p0}
                    for symbol, p in self.gbm_overrides.items()
                },
            },
            'grid': {
                'c_min_start': self.grid.c_min_start,
                'c_min_stop': self.grid.c_min_stop,
                'step': self.grid.step,
                'r_liq_start': self.grid.r_liq_start,
                'r_liq_gap': self.grid.r_liq_gap,
                'pairs': None if self.grid_pairs is None else [list(p) for p in self.grid_pairs],
            },
            'stats': {
                'alpha': self.stats.alpha,
                'delta': self.stats.delta,
                'n_min': self.stats.n_min,
                'n_max': self.stats.n_max,
                'block': self.stats.block,
            },
            'lp': {
                'c_min': self.lp.c_min,
                'r_liq': self.lp.r_liq,
                'max_liq': self.lp.max_liq,
                'interest_rate': self.lp.interest_rate,
                'c_cap': self.c_cap,
            },
            'population': {
                'ladder_start': self.population.ladder_start,
                'ladder_step': self.population.ladder_step,
                'borrowers': self.population.borrowers,
                'liquidators': self.population.liquidators,
                'loan_value': self.population.loan_value,
            },
            'seed': self.seed,
            'data': {'fixtures_dir': self.fixtures_dir, 'assets': dict(self.assets)},
            'output': {
                'results': self.results_path,
                'summary': self.summary_path,
                'simulation': self.simulation_path,
            },
            'logging': {'level': self.log_level, 'file': self.log_file},
            'execution': {'workers': self.workers},
        }


def _is_number(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool)


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


class ConfigValidator:
    """Validates configuration dictionaries, collecting every error"""

    @staticmethod
    def unknown_keys(
        raw: Dict[str, Any],
        template: Dict[str, Any] = DEFAULT_CONFIG,
        prefix: Tuple[str, ...] = (),
    ) -> List[str]:
        """Keys of raw that the template does not define, as dotted paths"""
        errors = []
        for key, value in raw.items():
            path = prefix + (str(key),)
            if key not in template:
                errors.append(f"Unknown key '{'.'.join(path)}'")
            elif path in FREE_FORM_KEYS:
                if value is not None and not isinstance(value, dict):
                    errors.append(f"'{'.'.join(path)}' must be a mapping")
            elif isinstance(template[key], dict):
                if isinstance(value, dict):
                    errors.extend(ConfigValidator.unknown_keys(value, template[key], path))
                else:
                    errors.append(f"'{'.'.join(path)}' must be a mapping")
        return errors

    @staticmethod
    def validate(config: Dict[str, Any]) -> Tuple[bool, List[str]]:
        """
        Validate a merged configuration

        Checks value types and ranges, and that every section builds its
        typed counterpart.

        Args:
            config: Complete configuration dictionary (defaults merged in)

        Returns:
            Tuple of (is_valid, list of error messages)
        """
        errors: List[str] = []

        def number(section: str, key: str, value: Any, integer: bool = False) -> bool:
            if not (_is_int(value) if integer else _is_number(value)):
                kind = "an integer" if integer else "a number"
                errors.append(f"{section}.{key} must be {kind}, got {value!r}")
                return False
            return True

        def build(section: str, factory, *args, **kwargs):
            try:
                return factory(*args, **kwargs)
            except ConfigInvalid as e:
                errors.append(f"{section}: {e}")
            except (TypeError, ValueError) as e:
                errors.append(f"{section}: {e}")
            return None

        # scenarios
        sc = config['scenarios']
        if not isinstance(sc['names'], list) or not sc['names']:
            errors.append("scenarios.names must be a non-empty list")
        else:
            for name in sc['names']:
                build("scenarios.names", normalize_scenario_name, str(name))
        if number("scenarios", "rho", sc['rho']) and not -1 <= sc['rho'] <= 1:
            errors.append(f"scenarios.rho must be in [-1, 1], got {sc['rho']}")
        if number("scenarios", "horizon", sc['horizon'], integer=True) and sc['horizon'] < 1:
            errors.append(f"scenarios.horizon must be positive, got {sc['horizon']}")
        for symbol, p in (sc['gbm'] or {}).items():
            if not isinstance(p, dict) or set(p) != {'mu', 'sigma', 'p0'}:
                errors.append(f"scenarios.gbm.{symbol} must have exactly mu, sigma, p0")
            elif all(number(f"scenarios.gbm.{symbol}", k, p[k]) for k in ('mu', 'sigma', 'p0')):
                build(f"scenarios.gbm.{symbol}", GbmParams, p['mu'], p['sigma'], p['p0'])

        # grid
        grid = config['grid']
        keys = ('c_min_start', 'c_min_stop', 'step', 'r_liq_start', 'r_liq_gap')
        if all([number("grid", k, grid[k]) for k in keys]):
            if grid['r_liq_start'] > grid['c_min_stop'] - grid['r_liq_gap'] + 1e-9:
                errors.append(
                    f"grid: r_liq_start ({grid['r_liq_start']}) exceeds "
                    f"c_min_stop - r_liq_gap ({grid['c_min_stop'] - grid['r_liq_gap']:.6g})"
                )
            elif grid['c_min_start'] > grid['c_min_stop']:
                errors.append("grid: c_min_start exceeds c_min_stop")
            elif grid['step'] <= 0:
                errors.append(f"grid.step must be positive, got {grid['step']}")
        pairs = grid['pairs']
        if pairs is not None:
            if not isinstance(pairs, list) or not pairs or not all(
                isinstance(p, list) and len(p) == 2 and all(map(_is_number, p)) for p in pairs
            ):
                errors.append("grid.pairs must be null or a non-empty list of [c_min, r_liq]")

        # stats
        st = config['stats']
        if all([number("stats", k, st[k]) for k in ('alpha', 'delta')]
               + [number("stats", k, st[k], integer=True) for k in ('n_min', 'n_max', 'block')]):
            build("stats", StatsParams, st['alpha'], st['delta'], st['n_min'], st['n_max'], st['block'])

        # lp
        lp = config['lp']
        if all([number("lp", k, lp[k]) for k in ('c_min', 'r_liq', 'max_liq', 'interest_rate', 'c_cap')]):
            build("lp", LpParams, lp['c_min'], lp['r_liq'], lp['max_liq'], lp['interest_rate'])
            if lp['c_cap'] <= 0:
                errors.append(f"lp.c_cap must be positive, got {lp['c_cap']}")

        # population
        pop = config['population']
        if number("population", "ladder_start", pop['ladder_start']) and pop['ladder_start'] < 1.0:
            errors.append(f"population.ladder_start must be >= 1.0, got {pop['ladder_start']}")
        if number("population", "ladder_step", pop['ladder_step']) and pop['ladder_step'] < 0:
            errors.append(f"population.ladder_step must be >= 0, got {pop['ladder_step']}")
        for key in ('borrowers', 'liquidators'):
            if number("population", key, pop[key], integer=True) and pop[key] < 1:
                errors.append(f"population.{key} must be positive, got {pop[key]}")
        if number("population", "loan_value", pop['loan_value']) and pop['loan_value'] <= 0:
            errors.append(f"population.loan_value must be positive, got {pop['loan_value']}")

        # scalars and paths
        if not _is_int(config['seed']) or config['seed'] < 0:
            errors.append(f"seed must be a non-negative integer, got {config['seed']!r}")
        if not isinstance(config['data']['fixtures_dir'], str):
            errors.append("data.fixtures_dir must be a string")
        for symbol, path in (config['data']['assets'] or {}).items():
            if not isinstance(path, str):
                errors.append(f"data.assets.{symbol} must be a path string")
        for key, value in config['output'].items():
            if not isinstance(value, str):
                errors.append(f"output.{key} must be a path string")
        if str(config['logging']['level']).upper() not in LOG_LEVELS:
            errors.append(f"logging.level must be one of {LOG_LEVELS}")
        if config['logging']['file'] is not None and not isinstance(config['logging']['file'], str):
            errors.append("logging.file must be null or a path string")
        workers = config['execution']['workers']
        if number("execution", "workers", workers, integer=True) and workers < 1:
            errors.append(f"execution.workers must be >= 1, got {workers}")

        return len(errors) == 0, errors


def merge_config(defaults: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    """Deep-merge overrides into a copy of defaults"""
    merged = copy.deepcopy(defaults)
    for key, value in overrides.items():
        if isinstance(merged.get(key), dict) and isinstance(value, dict) and merged[key]:
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def parse_config(text: str) -> ExperimentConfig:
    """
    Parse YAML text into a validated config

    Raises:
        ParseError: if the text is not YAML or not a mapping
        ValidationError: listing every invalid or unknown field
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as e:
        raise ParseError(f"Invalid YAML: {e}") from e

    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError(f"Config must be a mapping, got {type(raw).__name__}")

    errors = ConfigValidator.unknown_keys(raw)
    if errors:
        raise ValidationError(errors)

    merged = merge_config(DEFAULT_CONFIG, raw)
    merged['scenarios']['gbm'] = merged['scenarios']['gbm'] or {}
    merged['data']['assets'] = merged['data']['assets'] or {}

    is_valid, errors = ConfigValidator.validate(merged)
    if not is_valid:
        raise ValidationError(errors)

    return ExperimentConfig.from_dict(merged)


def load_config(path: Optional[Union[str, Path]] = None) -> ExperimentConfig:
    """
    Load configuration from a YAML file

    Args:
        path: Config file; None gives the defaults

    Returns:
        ExperimentConfig with defaults for every omitted field
    """
    if path is None:
        logger.info("No config file given, using defaults")
        return parse_config("")

    path = Path(path)
    with open(path, 'r') as f:
        text = f.read()

    cfg = parse_config(text)
    logger.info(f"Loaded config from {path}")
    return cfg


def dump_config(cfg: ExperimentConfig, path: Optional[Union[str, Path]] = None) -> str:
    """Serialize to YAML; writes the file too when a path is given"""
    text = yaml.safe_dump(cfg.to_dict(), sort_keys=False, default_flow_style=False)
    if path is not None:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text)
        logger.info(f"Wrote config to {path}")
    return text
