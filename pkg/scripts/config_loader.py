"""Configuration loader for the McKay degree toolkit."""

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import yaml
from sympy import isprime

from services.bijection_engine import STRATEGIES
from services.exceptions import InvalidInputError
from services.sym_characters import BRUTE_FORCE_N_MAX
from services.verify_suite import SuiteOptions

OUTPUT_FORMATS = ("json", "csv")
DEFAULT_HARD_CAP = 120


@dataclass(frozen=True)
class RunConfig:
    """Validated parameters for one CLI run."""
    n_max: int = 40
    primes: Tuple[int, ...] = (2, 3, 5, 7, 11, 13)
    restriction_cap: int = 10 ** 6
    gl3_sample_size: int = 100
    lemma11_sample_size: int = 60
    lemma11_digit_sample_size: int = 8
    seed: int = 0
    output: Optional[Path] = None
    format: str = "json"
    strategy: str = "recursive"
    workers: int = 1
    n_max_hard_cap: int = DEFAULT_HARD_CAP
    verification: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.n_max < 0:
            raise InvalidInputError(f"n_max={self.n_max} must be nonnegative")
        if self.n_max > self.n_max_hard_cap:
            raise InvalidInputError(f"n_max={self.n_max} exceeds the hard cap {self.n_max_hard_cap}")
        bad = [p for p in self.primes if not isprime(p)]
        if bad or not self.primes:
            raise InvalidInputError(f"Not primes: {bad or 'empty list'}")
        if self.strategy not in STRATEGIES:
            raise InvalidInputError(f"Unknown strategy {self.strategy!r}")
        if self.format not in OUTPUT_FORMATS:
            raise InvalidInputError(f"Unknown output format {self.format!r}")
        if self.restriction_cap < 1 or self.workers < 1:
            raise InvalidInputError("restriction cap and workers must be positive")

    def with_overrides(self, **overrides: Any) -> "RunConfig":
        """Copy with every non-None override applied (and re-validated)."""
        return replace(self, **{key: value for key, value in overrides.items() if value is not None})

    def suite_options(self) -> SuiteOptions:
        verification = self.verification
        return SuiteOptions(
            n_max=self.n_max,
            primes=self.primes,
            strategies=STRATEGIES,
            counting_n_max=verification.get("counting_n_max", 60),
            bijection_n_max=verification.get("bijection_n_max", 40),
            brute_force_n_max=verification.get("brute_force_n_max", BRUTE_FORCE_N_MAX),
            seed=self.seed,
            gl3_sample_size=self.gl3_sample_size,
            lemma11_sample_size=self.lemma11_sample_size,
            lemma11_digit_sample_size=self.lemma11_digit_sample_size,
            restriction_cap=self.restriction_cap,
            rasala_n_max=verification.get("rasala_n_max", 25),
            decisiva_n_max=verification.get("decisiva_n_max", 30),
            lr_witness_n_max=verification.get("lr_witness_n_max", 14),
            delta_enumeration_cap=verification.get("delta_enumeration_cap", 200_000),
            subset_enumeration_cap=verification.get("subset_enumeration_cap", 2_000_000),
            appendix_p_max=verification.get("appendix_p_max", 97),
            appendix_k_max=verification.get("appendix_k_max", 12),
        )


class ConfigLoader:
    """Load and manage configuration from YAML files."""

    def __init__(self, config_dir: Optional[Path] = None):
        if config_dir is None:
            config_dir = Path(__file__).parent.parent / "config"
        self.config_dir = Path(config_dir)
        self._settings: Optional[Dict[str, Any]] = None
        self._local: Optional[Dict[str, Any]] = None

    def _load_yaml(self, filename: str) -> Dict[str, Any]:
        """Load a YAML file from the config directory."""
        filepath = self.config_dir / filename
        if not filepath.exists():
            raise FileNotFoundError(f"Config file not found: {filepath}")
        with open(filepath, "r") as f:
            return yaml.safe_load(f) or {}

    def _load_yaml_optional(self, filename: str) -> Dict[str, Any]:
        """Load a YAML file if it exists, otherwise return empty dict."""
        filepath = self.config_dir / filename
        if not filepath.exists():
            return {}
        with open(filepath, "r") as f:
            return yaml.safe_load(f) or {}

    @property
    def settings(self) -> Dict[str, Any]:
        """Load and cache settings.yaml, with local.yaml sections laid over it."""
        if self._settings is None:
            settings = self._load_yaml("settings.yaml")
            for section, values in self.local.items():
                if isinstance(values, dict):
                    settings[section] = {**settings.get(section, {}), **values}
                else:
                    settings[section] = values
            self._settings = settings
        return self._settings

    @property
    def local(self) -> Dict[str, Any]:
        """Load and cache local.yaml (machine-specific overrides, not committed)."""
        if self._local is None:
            self._local = self._load_yaml_optional("local.yaml")
        return self._local

    @property
    def run(self) -> Dict[str, Any]:
        return self.settings.get("run", {})

    @property
    def n_max(self) -> int:
        return int(self.run.get("n_max", 40))

    @property
    def n_max_hard_cap(self) -> int:
        return int(self.run.get("n_max_hard_cap", DEFAULT_HARD_CAP))

    @property
    def primes(self) -> Tuple[int, ...]:
        return tuple(int(p) for p in self.run.get("primes", [2, 3, 5, 7, 11, 13]))

    @property
    def strategy(self) -> str:
        return self.run.get("strategy", "recursive")

    @property
    def output_format(self) -> str:
        return self.run.get("format", "json")

    @property
    def workers(self) -> int:
        return int(self.run.get("workers", 1))

    @property
    def restriction_cap(self) -> int:
        return int(self.settings.get("restriction", {}).get("cap", 10 ** 6))

    @property
    def seed(self) -> int:
        return int(self.settings.get("sampling", {}).get("seed", 0))

    @property
    def gl3_sample_size(self) -> int:
        return int(self.settings.get("sampling", {}).get("gl3_sample_size", 100))

    @property
    def lemma11_sample_size(self) -> int:
        return int(self.settings.get("sampling", {}).get("lemma11_sample_size", 60))

    @property
    def lemma11_digit_sample_size(self) -> int:
        return int(self.settings.get("sampling", {}).get("lemma11_digit_sample_size", 8))

    @property
    def verification(self) -> Dict[str, Any]:
        return self.settings.get("verification", {})

    @property
    def cache_enabled(self) -> bool:
        return bool(self.settings.get("cache", {}).get("enabled", True))

    @property
    def cache_dir(self) -> Path:
        """Cache directory: the environment variable wins over settings."""
        cache = self.settings.get("cache", {})
        env_var = cache.get("env_var", "SN_MCKAY_CACHE_DIR")
        return Path(os.environ.get(env_var) or cache.get("dir", ".cache/sn-mckay")).expanduser()

    @property
    def log_level(self) -> str:
        return self.settings.get("logging", {}).get("level", "INFO")

    @property
    def log_file(self) -> Optional[str]:
        return self.settings.get("logging", {}).get("file")

    @property
    def log_format(self) -> str:
        return self.settings.get("logging", {}).get("format", "%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    def run_config(self) -> RunConfig:
        """RunConfig built from settings alone."""
        return RunConfig(
            n_max=self.n_max,
            primes=self.primes,
            restriction_cap=self.restriction_cap,
            gl3_sample_size=self.gl3_sample_size,
            lemma11_sample_size=self.lemma11_sample_size,
            lemma11_digit_sample_size=self.lemma11_digit_sample_size,
            seed=self.seed,
            format=self.output_format,
            strategy=self.strategy,
            workers=self.workers,
            n_max_hard_cap=self.n_max_hard_cap,
            verification=dict(self.verification),
        )


# Global config instance
_config: Optional[ConfigLoader] = None


def get_config() -> ConfigLoader:
    """Get the global config instance."""
    global _config
    if _config is None:
        _config = ConfigLoader()
    return _config
