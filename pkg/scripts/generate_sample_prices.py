"""
Generate Sample Price Histories
Creates synthetic trimester date,close CSVs from the default GBM table
"""

import argparse
import sys
from datetime import datetime, timedelta
from pathlib import Path

import numpy as np
import pandas as pd

sys.path.insert(0, str(Path(__file__).parent.parent))

from lendpool.pricing import (  # noqa: E402
    DAY,
    DEFAULT_GBM_TABLE,
    GbmParams,
    gbm_step,
    process_coefficients,
)

DAYS = 91


def generate_daily_closes(
    params: GbmParams,
    start_date: datetime,
    days: int = DAYS,
    seed: int = 0,
) -> pd.DataFrame:
    """
    Daily closes whose log returns match the estimation convention

    Daily moves come from the same process the simulator drives, so log
    returns have mean mu and standard deviation sigma * sqrt(91/365) and
    estimating on the output recovers params up to sampling error.

    Args:
        params: Drift, volatility and final close
        start_date: Date of the first close
        days: Number of closes
        seed: Generator seed

    Returns:
        DataFrame with date and close columns, ending at params.p0
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    eps = rng.standard_normal(days - 1)
    returns = np.log(gbm_step(1.0, process_coefficients(params), DAY, eps))
    log_path = np.concatenate(([0.0], np.cumsum(returns)))
    closes = params.p0 * np.exp(log_path - log_path[-1])

    dates = [start_date + timedelta(days=i) for i in range(days)]
    return pd.DataFrame({
        'date': [d.strftime('%Y-%m-%d') for d in dates],
        'close': np.round(closes, 6),
    })


def main():
    """Generate sample price histories for testing"""
    parser = argparse.ArgumentParser(description='Write synthetic date,close fixtures')
    parser.add_argument('--out', type=str, default='data/samples', help='Output directory')
    parser.add_argument('--seed', type=int, default=7, help='Base seed')
    parser.add_argument('--start', type=str, default='2021-02-03', help='First date (YYYY-MM-DD)')
    args = parser.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    start = datetime.strptime(args.start, '%Y-%m-%d')

    print("Generating sample price histories...")
    for index, (symbol, params) in enumerate(sorted(DEFAULT_GBM_TABLE.items())):
        df = generate_daily_closes(params, start, seed=args.seed + index)
        output_file = out / f'{symbol}.csv'
        df.to_csv(output_file, index=False)
        print(f"  {symbol}: {len(df)} closes -> {output_file}")

    print("\nSample data generation complete!")
    print("\nEstimate parameters with:")
    print(f"  python -m lendpool estimate-params {out / 'ETH.csv'}")


if __name__ == '__main__':
    main()
