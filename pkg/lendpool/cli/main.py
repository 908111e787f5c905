"""
Command-Line Interface
Entry point for simulations, parameter estimation, sweeps and the example replay
"""

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path
from typing import List, Optional

from dotenv import load_dotenv

from ..analysis import Simulator, parse_grid, summarize_sweep, sweep, validate_grid, write_results
from ..config import ExperimentConfig, load_config
from ..core.errors import LendingPoolError
from ..core.state import LpParams
from ..data_ingest import PriceHistoryLoader, PriceHistoryValidator
from ..pricing import estimate_from_frame
from ..scenario import PopulationStateBuilder, build_initial_state, build_scenarios, replay_all_orders

logger = logging.getLogger(__name__)

FIXTURES_ENV = "LENDPOOL_FIXTURES"


def setup_logging(level: str = 'INFO', log_file: Optional[str] = None):
    """Setup logging configuration"""
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=getattr(logging, level.upper()),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def fixtures_dir(config: ExperimentConfig) -> str:
    """Fixture directory: LENDPOOL_FIXTURES when set, else the configured one"""
    return os.environ.get(FIXTURES_ENV) or config.fixtures_dir


def format_error(exc: BaseException) -> str:
    """Single machine-readable error line"""
    message = str(exc).replace('\\', '\\\\').replace('"', '\\"').replace('\n', ' ')
    return f'error={type(exc).__name__} message="{message}"'


def apply_overrides(args, config: ExperimentConfig) -> ExperimentConfig:
    """CLI flags take precedence over the config file"""
    changes = {}
    if getattr(args, 'seed', None) is not None:
        changes['seed'] = args.seed
    if getattr(args, 'scenario', None):
        changes['scenarios'] = tuple(name.strip() for name in args.scenario.split(',') if name.strip())
    if getattr(args, 'workers', None) is not None:
        changes['workers'] = args.workers

    stats = config.stats
    if getattr(args, 'delta', None) is not None:
        stats = replace(stats, delta=args.delta)
    if getattr(args, 'alpha', None) is not None:
        stats = replace(stats, alpha=args.alpha)
    if getattr(args, 'max_sims', None) is not None:
        stats = replace(stats, n_min=min(stats.n_min, args.max_sims), n_max=args.max_sims)
    changes['stats'] = stats

    if getattr(args, 'grid', None):
        changes['grid_pairs'] = tuple(parse_grid(args.grid))

    return replace(config, **changes)


def cmd_simulate(args, config: ExperimentConfig) -> int:
    """Run one seeded simulation and write the per-round state CSV"""
    params = LpParams(
        c_min=args.c_min if args.c_min is not None else config.lp.c_min,
        r_liq=args.r_liq if args.r_liq is not None else config.lp.r_liq,
        max_liq=config.lp.max_liq,
        interest_rate=config.lp.interest_rate,
    )
    scenario = build_scenarios(config, fixtures_dir(config), names=[config.scenarios[0]])[0]
    init = build_initial_state(config, scenario, params)

    print(f"\n{'='*60}")
    print(f"SIMULATING {scenario.name}: CMin={params.c_min} Rliq={params.r_liq} seed={config.seed}")
    print(f"{'='*60}\n")

    result = Simulator(scenario, init, c_cap=config.c_cap).run(config.seed)

    out = Path(args.out or config.simulation_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    result.to_frame().to_csv(out, index=False, float_format="%.9g", lineterminator="\n")

    executed = sum(len(actions) for actions in result.liquidations)
    print(f"Rounds: {result.path.horizon}")
    print(f"Liquidations: {executed}")
    for column, borrower in enumerate(result.borrowers):
        print(f"  {borrower}: C {result.observables[0, column]:.4f} -> "
              f"{result.observables[-1, column]:.4f}")
    print(f"\nResults saved to: {out}")
    return 0


def cmd_estimate_params(args, config: ExperimentConfig) -> int:
    """Estimate GBM parameters from a date,close CSV"""
    loader = PriceHistoryLoader(fixtures_dir(config))
    history = loader.load(args.csv)
    PriceHistoryValidator.check_outliers(history)
    summary = PriceHistoryValidator.summarize_history(history)

    params = estimate_from_frame(history, args.p0)

    print(f"file={loader.resolve(args.csv)}")
    print(f"closes={summary['total_closes']} "
          f"from={summary['date_range']['start'].date()} to={summary['date_range']['end'].date()}")
    print(f"mu={params.mu:.9g}")
    print(f"sigma={params.sigma:.9g}")
    print(f"p0={params.p0:.9g}")
    return 0


def cmd_sweep(args, config: ExperimentConfig) -> int:
    """Run the (CMin, Rliq) sweep and write the results CSV"""
    pairs = config.pairs()
    scenarios = build_scenarios(config, fixtures_dir(config))

    print(f"\n{'='*60}")
    print(f"RUNNING SWEEP: {len(scenarios)} scenario(s) x {len(pairs)} grid pair(s)")
    print(f"alpha={config.stats.alpha} delta={config.stats.delta} n_max={config.stats.n_max}")
    print(f"{'='*60}\n")

    cells = sweep(
        scenarios,
        pairs,
        config.stats,
        base_seed=config.seed,
        build_state=PopulationStateBuilder(config.population),
        lp_defaults=config.lp,
        c_cap=config.c_cap,
        workers=config.workers,
    )

    out = write_results(cells, Path(args.out or config.results_path))
    summary = summarize_sweep(cells)
    summary_path = Path(args.summary or config.summary_path)
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    summary.to_csv(summary_path, index=False, float_format="%.9g", lineterminator="\n")

    unconverged = [c for c in cells if not c.estimates.all_converged]
    print(f"Cells: {len(cells)} ({len(unconverged)} hit n_max before converging)")
    print(f"\nResults saved to: {out}")
    print(f"Summary saved to: {summary_path}")
    return 0


def cmd_replay_example(args, config: ExperimentConfig) -> int:
    """Replay the running example in all six orders"""
    report = replay_all_orders(tolerance=args.tolerance)

    for trace in report.traces:
        status = "PASS" if trace.passed else "FAIL"
        print(f"[{status}] {trace.label()}")
        if trace.error:
            print(f"       {trace.error}")

    if not report.finals_agree:
        print("Final states differ between traces")
    diff = report.diff_frame()
    if not diff.empty:
        print(diff.to_string(index=False))

    print(report.summary())
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='lendpool',
        description='Lending pool liquidation simulator',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )

    parser.add_argument('--config', type=str, default=None, help='Path to YAML configuration file')
    parser.add_argument(
        '--log-level',
        type=str,
        default=None,
        choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'],
        help='Logging level (default: from config)'
    )
    parser.add_argument('--log-file', type=str, default=None, help='Also log to this file')

    subparsers = parser.add_subparsers(dest='command', help='Command to run')

    # Simulate command
    simulate_parser = subparsers.add_parser('simulate', help='Run one seeded simulation')
    simulate_parser.add_argument('--scenario', type=str, help='Scenario name, e.g. ETH-WBTC')
    simulate_parser.add_argument('--seed', type=int, help='Path seed')
    simulate_parser.add_argument('--c-min', type=float, help='CMin (default: lp.c_min)')
    simulate_parser.add_argument('--r-liq', type=float, help='Rliq (default: lp.r_liq)')
    simulate_parser.add_argument('--out', type=str, help='Output CSV path')

    # Estimate command
    estimate_parser = subparsers.add_parser('estimate-params', help='Estimate GBM parameters from a CSV')
    estimate_parser.add_argument('csv', type=str, help='date,close CSV (relative to the fixture dir)')
    estimate_parser.add_argument('--p0', type=float, help='Initial price (default: last close)')

    # Sweep command
    sweep_parser = subparsers.add_parser('sweep', help='Run the (CMin, Rliq) sweep')
    sweep_parser.add_argument('--scenario', type=str, help='Comma-separated scenario names')
    sweep_parser.add_argument('--grid', type=str, help='cmin:rliq[,cmin:rliq...]')
    sweep_parser.add_argument('--seed', type=int, help='Base seed')
    sweep_parser.add_argument('--out', type=str, help='Results CSV path')
    sweep_parser.add_argument('--summary', type=str, help='Summary CSV path')
    sweep_parser.add_argument('--delta', type=float, help='Maximum confidence interval width')
    sweep_parser.add_argument('--alpha', type=float, help='1 - confidence level')
    sweep_parser.add_argument('--max-sims', type=int, help='Simulation budget per cell')
    sweep_parser.add_argument('--workers', type=int, help='Worker processes')

    # Replay command
    replay_parser = subparsers.add_parser('replay-example', help='Replay the running example')
    replay_parser.add_argument('--tolerance', type=float, default=0.5, help='Allowed absolute cell error')

    return parser


COMMANDS = {
    'simulate': cmd_simulate,
    'estimate-params': cmd_estimate_params,
    'sweep': cmd_sweep,
    'replay-example': cmd_replay_example,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point"""
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command is None:
        parser.print_help()
        return 2

    load_dotenv()

    try:
        config = load_config(args.config)
        setup_logging(args.log_level or config.log_level, args.log_file or config.log_file)
        config = apply_overrides(args, config)
        if config.grid_pairs is not None:
            validate_grid(config.grid_pairs, config.grid.r_liq_start, config.grid.r_liq_gap)
        return COMMANDS[args.command](args, config)
    except (LendingPoolError, OSError) as e:
        logger.debug("Command failed", exc_info=True)
        print(format_error(e), file=sys.stderr)
        return 1


if __name__ == '__main__':
    sys.exit(main())
