"""Configuration management for dicke_battery."""

from __future__ import annotations

import copy
import json
from pathlib import Path
from typing import Any

from .constants import DEFAULT_CURVE_SAMPLES, DEFAULT_METHOD, DEFAULT_N_VALUES, DEFAULT_RATIO, DEFAULT_TOL
from .errors import ConfigError
from .logging_config import get_logger

# Try to import tomllib (Python 3.11+) or fallback to tomli
try:
    import tomllib
except ImportError:
    try:
        import tomli as tomllib  # type: ignore
    except ImportError:
        tomllib = None  # type: ignore

log = get_logger("config")

# Default configuration
DEFAULT_CONFIG: dict[str, dict[str, Any]] = {
    "model": {
        "omega": 1.0,
        "omega0": 1.0,
        "lambda": 0.5,
        "epsilon": -1.0,
        "N": 100,
    },
    "run": {
        "system": "reduced",  # full, reduced, qphi
        "init": "bound-luminosity",  # bound-luminosity, explicit
        "state": None,  # explicit initial state, system column order
        "k": 0.8,
        "k_values": [0.5, 0.8, 1.0, 1.2],
        "branch": "minus",
        "t_end": 2.0,
        "periods": 1,  # analytic comparison span
        "dt_out": 0.01,
        "tol": DEFAULT_TOL,
        "method": DEFAULT_METHOD,
        "n_values": list(DEFAULT_N_VALUES),
        "mode": "fixed-lambda",  # fixed-lambda, fixed-ratio
        "ratio": DEFAULT_RATIO,
        "workers": 1,
        "samples": DEFAULT_CURVE_SAMPLES,
        "format": "csv",
        "out": None,
    },
}


class Config:
    """Effective configuration of one run: defaults < config file < flags."""

    _config: dict[str, dict[str, Any]]

    def __init__(self, user_config: dict[str, Any] | None = None) -> None:
        self._config = copy.deepcopy(DEFAULT_CONFIG)
        if user_config:
            self._merge_config(user_config)

    @classmethod
    def from_file(cls, path: str | Path) -> Config:
        """Load a JSON (or TOML) configuration file.

        Raises:
            ConfigError: if the file is unreadable, malformed, or holds unknown keys.
        """
        path = Path(path)
        try:
            raw = path.read_bytes()
        except OSError as e:
            raise ConfigError(f"cannot read config file {path}: {e}") from e

        if path.suffix == ".toml":
            if tomllib is None:
                raise ConfigError("TOML config requires Python 3.11+ or the 'tomli' package")
            try:
                data = tomllib.loads(raw.decode("utf-8"))
            except (UnicodeDecodeError, tomllib.TOMLDecodeError) as e:
                raise ConfigError(f"malformed TOML in {path}: {e}") from e
        else:
            try:
                data = json.loads(raw)
            except (UnicodeDecodeError, json.JSONDecodeError) as e:
                raise ConfigError(f"malformed JSON in {path}: {e}") from e

        if not isinstance(data, dict):
            raise ConfigError(f"config file {path} must contain an object at top level")
        log.debug(f"Loaded config from {path}")
        return cls(data)

    def _merge_config(self, user_config: dict[str, Any]) -> None:
        """Merge user config into the defaults, rejecting unknown sections and keys."""
        for section, values in user_config.items():
            if section not in self._config:
                raise ConfigError(f"unknown config section '{section}'")
            if not isinstance(values, dict):
                raise ConfigError(f"config section '{section}' must be an object")
            for key, value in values.items():
                self.set(section, key, value)

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """Get a configuration value.

        Args:
            section: Config section ("model" or "run").
            key: Config key within section.
            default: Default value if not found.

        Returns:
            Configuration value or default.
        """
        try:
            return self._config[section][key]
        except KeyError:
            return default

    def set(self, section: str, key: str, value: Any) -> None:
        """Set a configuration value (runtime only, not persisted)."""
        if section not in self._config:
            raise ConfigError(f"unknown config section '{section}'")
        if key not in self._config[section]:
            raise ConfigError(f"unknown key '{key}' in section '{section}'")
        self._config[section][key] = value

    def apply_overrides(self, section: str, **values: Any) -> None:
        """Apply command-line values; None means the flag was not given."""
        for key, value in values.items():
            if value is None or (isinstance(value, tuple) and not value):
                continue
            self.set(section, key, list(value) if isinstance(value, tuple) else value)

    def as_dict(self) -> dict[str, dict[str, Any]]:
        """Deep copy of the effective configuration."""
        return copy.deepcopy(self._config)

    @property
    def model(self) -> dict[str, Any]:
        """Model section, keyed the way ModelParams.from_dict expects."""
        return dict(self._config["model"])

    def number(self, section: str, key: str) -> float:
        """Numeric value of a key.

        Raises:
            ConfigError: if the value is not a number.
        """
        value = self.get(section, key)
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"'{key}' must be a number, got {value!r}")
        return float(value)

    def number_list(self, section: str, key: str) -> list:
        """List value of a key whose items are numbers (ints stay ints)."""
        values = self.get(section, key)
        if not isinstance(values, (list, tuple)) or not all(
            isinstance(v, (int, float)) and not isinstance(v, bool) for v in values
        ):
            raise ConfigError(f"'{key}' must be a list of numbers, got {values!r}")
        return list(values)

    @property
    def tol(self) -> float:
        return self.number("run", "tol")

    @property
    def k(self) -> float:
        return self.number("run", "k")

    @property
    def k_values(self) -> list[float]:
        return [float(k) for k in self.number_list("run", "k_values")]

    @property
    def n_values(self) -> list:
        """N grid as given; parity and spacing are checked by the scaling study."""
        return self.number_list("run", "n_values")

    @property
    def output_format(self) -> str:
        fmt = str(self.get("run", "format", "csv"))
        if fmt not in ("csv", "json"):
            raise ConfigError(f"format must be 'csv' or 'json', got '{fmt}'")
        return fmt

    @property
    def out(self) -> str | None:
        value = self.get("run", "out")
        return None if value is None else str(value)


def load_config(path: str | Path | None = None) -> Config:
    """Build the configuration for one invocation."""
    if path is None:
        return Config()
    return Config.from_file(path)
