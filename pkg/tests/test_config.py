from pathlib import Path

import pytest

from lendpool.config import DEFAULT_CONFIG, dump_config, load_config, parse_config
from lendpool.core.errors import ParseError, ValidationError
from lendpool.pricing import GbmParams

REPO_CONFIG = Path(__file__).resolve().parent.parent / "config" / "experiment_config.yaml"


def test_empty_config_gives_defaults():
    cfg = parse_config("")

    assert cfg.scenarios == ("ETH-WBTC", "ETH-USDC", "USDC-WBTC")
    assert cfg.rho == -1.0
    assert cfg.horizon == 91
    assert cfg.seed == 42
    assert cfg.stats.n_max == 5010
    assert cfg.lp.max_liq == 0.5
    assert cfg.c_cap == 10.0
    assert cfg.population.borrowers == 10
    assert len(cfg.pairs()) == 10
    assert cfg == load_config()


def test_repository_config_matches_defaults():
    assert load_config(REPO_CONFIG) == load_config()


def test_partial_section_keeps_other_defaults():
    cfg = parse_config("stats:\n  delta: 0.2\n")

    assert cfg.stats.delta == 0.2
    assert cfg.stats.alpha == 0.05
    assert cfg.stats.n_min == 30


def test_gbm_overrides_and_explicit_pairs():
    cfg = parse_config(
        "scenarios:\n"
        "  names: [eth-usdc]\n"
        "  gbm:\n"
        "    eth: {mu: 0.0, sigma: 0.1, p0: 100.0}\n"
        "grid:\n"
        "  pairs: [[1.5, 1.1], [1.4, 1.2]]\n"
    )

    assert cfg.scenarios == ("ETH-USDC",)
    assert cfg.gbm_overrides == {"ETH": GbmParams(0.0, 0.1, 100.0)}
    assert cfg.pairs() == [(1.5, 1.1), (1.4, 1.2)]


def test_unknown_key():
    with pytest.raises(ValidationError) as exc_info:
        parse_config("stats:\n  deltaa: 0.2\nverbose: true\n")

    assert "Unknown key 'stats.deltaa'" in exc_info.value.errors
    assert "Unknown key 'verbose'" in exc_info.value.errors


def test_grid_start_beyond_stop():
    with pytest.raises(ValidationError, match="exceeds c_min_stop - r_liq_gap"):
        parse_config("grid:\n  r_liq_start: 1.5\n")


@pytest.mark.parametrize("text", [
    "seed: -1\n",
    "lp:\n  r_liq: 1.6\n",
    "stats:\n  n_min: 1\n",
    "logging:\n  level: LOUD\n",
    "scenarios:\n  names: [DOGE-ETH]\n",
    "population:\n  ladder_start: 0.5\n",
    "execution:\n  workers: 0\n",
    "stats: 3\n",
])
def test_invalid_values(text):
    with pytest.raises(ValidationError):
        parse_config(text)


def test_every_error_is_reported():
    with pytest.raises(ValidationError) as exc_info:
        parse_config("seed: -1\nexecution:\n  workers: 0\n")
    assert len(exc_info.value.errors) == 2


@pytest.mark.parametrize("text", ["stats: [1, 2\n", "- a\n- b\n"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_config(text)


def test_dump_round_trip(tmp_path):
    cfg = parse_config(
        "scenarios:\n"
        "  gbm:\n"
        "    WBTC: {mu: 0.01, sigma: 0.09, p0: 50000.0}\n"
        "grid:\n"
        "  pairs: [[1.3, 1.1]]\n"
        "seed: 7\n"
    )
    path = tmp_path / "nested" / "cfg.yaml"
    text = dump_config(cfg, path)

    assert path.read_text() == text
    assert parse_config(text) == cfg
    assert load_config(path) == cfg


def test_defaults_are_not_mutated():
    parse_config("stats:\n  delta: 0.5\n")
    assert DEFAULT_CONFIG["stats"]["delta"] == 0.1


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_config("does/not/exist.yaml")
