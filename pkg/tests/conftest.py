"""Shared fixtures."""

from pathlib import Path

import pytest
import yaml
from click.testing import CliRunner

SETTINGS = {
    "run": {
        "n_max": 12,
        "n_max_hard_cap": 120,
        "primes": [2, 3, 5],
        "strategy": "recursive",
        "format": "json",
        "workers": 1,
    },
    "restriction": {"cap": 100000},
    "sampling": {"seed": 0, "gl3_sample_size": 10, "lemma11_sample_size": 10, "lemma11_digit_sample_size": 3},
    "verification": {"counting_n_max": 12, "bijection_n_max": 10, "brute_force_n_max": 12},
    "cache": {"enabled": True, "dir": ".cache", "env_var": "SN_MCKAY_TEST_CACHE_DIR"},
    "logging": {"level": "WARNING", "file": None},
}


def write_settings(directory: Path, settings: dict) -> Path:
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "settings.yaml", "w") as f:
        yaml.safe_dump(settings, f)
    return directory


@pytest.fixture
def config_dir(tmp_path, monkeypatch):
    """A config directory whose cache lives under tmp_path."""
    monkeypatch.setenv("SN_MCKAY_TEST_CACHE_DIR", str(tmp_path / "cache"))
    return write_settings(tmp_path / "config", SETTINGS)


@pytest.fixture
def runner():
    return CliRunner()
