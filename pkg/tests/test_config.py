"""Tests for configuration loading and overrides."""

import json

import pytest

from dicke_battery.config import DEFAULT_CONFIG, Config, load_config, tomllib
from dicke_battery.errors import ConfigError


@pytest.fixture
def config_file(tmp_path):
    def write(data, name="config.json"):
        path = tmp_path / name
        path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
        return path

    return write


class TestConfig:
    """Tests for the Config class."""

    def test_defaults(self):
        """A fresh config holds the documented defaults."""
        cfg = Config()
        assert cfg.get("model", "lambda") == 0.5
        assert cfg.get("run", "system") == "reduced"
        assert cfg.k == 0.8
        assert cfg.tol == 1e-10
        assert cfg.output_format == "csv"
        assert cfg.out is None

    def test_instances_are_independent(self):
        """Changing one config leaves the defaults and other configs alone."""
        first = Config()
        first.set("run", "k_values", [0.1])
        assert Config().k_values == [0.5, 0.8, 1.0, 1.2]
        assert DEFAULT_CONFIG["run"]["k_values"] == [0.5, 0.8, 1.0, 1.2]

    def test_merge(self):
        """User values override defaults key by key."""
        cfg = Config({"model": {"N": 40}, "run": {"k": 1.2}})
        assert cfg.model["N"] == 40
        assert cfg.model["omega"] == 1.0
        assert cfg.k == 1.2

    @pytest.mark.parametrize(
        "data",
        [{"physics": {}}, {"model": {"gamma": 1.0}}, {"run": []}],
    )
    def test_unknown_keys(self, data):
        """Unknown sections and keys are errors, not silently ignored."""
        with pytest.raises(ConfigError):
            Config(data)

    def test_overrides_skip_unset_flags(self):
        """None and empty tuples mean the flag was not given."""
        cfg = Config({"run": {"k": 0.3}})
        cfg.apply_overrides("run", k=None, k_values=(), t_end=5.0)
        assert cfg.k == 0.3
        assert cfg.k_values == [0.5, 0.8, 1.0, 1.2]
        assert cfg.number("run", "t_end") == 5.0

    def test_overrides_tuple_to_list(self):
        """Repeated flags arrive as tuples and are stored as lists."""
        cfg = Config()
        cfg.apply_overrides("run", k_values=(0.5, 1.2))
        assert cfg.get("run", "k_values") == [0.5, 1.2]

    def test_number_type_errors(self):
        """Non-numeric values raise ConfigError."""
        cfg = Config({"run": {"tol": "small", "n_values": [100, "x"], "k": True}})
        with pytest.raises(ConfigError):
            cfg.tol
        with pytest.raises(ConfigError):
            cfg.n_values
        with pytest.raises(ConfigError):
            cfg.k

    def test_bad_format(self):
        """Only csv and json are supported."""
        with pytest.raises(ConfigError):
            Config({"run": {"format": "xml"}}).output_format

    def test_as_dict_is_a_copy(self):
        """as_dict cannot be used to mutate the config."""
        cfg = Config()
        cfg.as_dict()["model"]["N"] = 2
        assert cfg.model["N"] == 100


class TestLoadConfig:
    """Tests for reading config files."""

    def test_json(self, config_file):
        """JSON files are merged over the defaults."""
        cfg = load_config(config_file({"model": {"lambda": 0.7}}))
        assert cfg.model["lambda"] == 0.7

    @pytest.mark.skipif(tomllib is None, reason="needs Python 3.11+ or tomli")
    def test_toml(self, config_file):
        """TOML files work as well."""
        cfg = load_config(config_file('[run]\nk = 1.2\nsystem = "full"\n', "config.toml"))
        assert cfg.k == 1.2
        assert cfg.get("run", "system") == "full"

    def test_no_file(self):
        """Without a path the defaults are used."""
        assert load_config(None).as_dict() == Config().as_dict()

    @pytest.mark.parametrize("text", ["{not json", "[1, 2]"])
    def test_malformed(self, config_file, text):
        """Malformed files and non-object documents raise ConfigError."""
        with pytest.raises(ConfigError):
            load_config(config_file(text))

    def test_missing_file(self, tmp_path):
        """Unreadable paths raise ConfigError."""
        with pytest.raises(ConfigError):
            load_config(tmp_path / "absent.json")
