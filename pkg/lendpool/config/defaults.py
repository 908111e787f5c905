"""
Default experiment configuration
Every key a config file may set, with its default value
"""

# Price scenarios
SCENARIO_CONFIG = {
    'names': ['ETH-WBTC', 'ETH-USDC', 'USDC-WBTC'],
    'rho': -1.0,            # shock correlation between collateral and loan asset
    'horizon': 91,          # liquidation rounds per simulation
    'gbm': {},              # symbol -> {mu, sigma, p0}, overrides the built-in table
}

# (CMin, Rliq) sweep
GRID_CONFIG = {
    'c_min_start': 1.2,
    'c_min_stop': 1.5,
    'step': 0.1,
    'r_liq_start': 1.1,
    'r_liq_gap': 0.1,       # Rliq runs up to CMin - r_liq_gap
    'pairs': None,          # explicit [[c_min, r_liq], ...] replaces the rule
}

# Sequential estimation
STATS_CONFIG = {
    'alpha': 0.05,
    'delta': 0.1,
    'n_min': 30,
    'n_max': 5010,
    'block': 30,
}

# Protocol parameters
LP_CONFIG = {
    'c_min': 1.5,           # used by `simulate`; the sweep takes CMin from the grid
    'r_liq': 1.1,
    'max_liq': 0.5,
    'interest_rate': 0.0,
    'c_cap': 10.0,          # stand-in for infinite collateralization
}

# Initial agents
POPULATION_CONFIG = {
    'ladder_start': 1.0,
    'ladder_step': 0.1,
    'borrowers': 10,
    'liquidators': 3,
    'loan_value': 10000.0,  # USD per borrower
}

DATA_CONFIG = {
    'fixtures_dir': 'data/fixtures',
    'assets': {},           # symbol -> date,close CSV used to estimate GBM parameters
}

OUTPUT_CONFIG = {
    'results': 'results/sweep_results.csv',
    'summary': 'results/sweep_summary.csv',
    'simulation': 'results/simulation.csv',
}

LOGGING_CONFIG = {
    'level': 'INFO',
    'file': None,
}

EXECUTION_CONFIG = {
    'workers': 1,
}

DEFAULT_CONFIG = {
    'scenarios': SCENARIO_CONFIG,
    'grid': GRID_CONFIG,
    'stats': STATS_CONFIG,
    'lp': LP_CONFIG,
    'population': POPULATION_CONFIG,
    'seed': 42,
    'data': DATA_CONFIG,
    'output': OUTPUT_CONFIG,
    'logging': LOGGING_CONFIG,
    'execution': EXECUTION_CONFIG,
}

# Sections whose keys are user-chosen names rather than settings
FREE_FORM_KEYS = {('scenarios', 'gbm'), ('data', 'assets')}

LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR']
