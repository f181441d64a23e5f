"""Tests for output helpers."""

import json

import pytest

from dicke_battery.errors import ConfigError
from dicke_battery.utils import (
    check_writable,
    format_float,
    render_csv,
    render_json,
    sweep_progress,
    write_csv,
    write_json,
)


class TestFormatFloat:
    """Tests for format_float."""

    @pytest.mark.parametrize("value", [0.1, 1.0 / 3.0, 12.367585, -1e-300, 2.0**60])
    def test_round_trip(self, value):
        """The text parses back to the same double."""
        assert float(format_float(value)) == value

    def test_numpy_scalars(self):
        """numpy floats are formatted like Python floats."""
        import numpy as np

        assert format_float(np.float64(0.25)) == "0.25"


class TestWriters:
    """Tests for CSV and JSON output."""

    def test_render_csv(self):
        """Header, config comment and rows."""
        text = render_csv(("t", "x"), [(0.0, 1.5), (0.1, -2.0)], {"run": {"k": 0.8}})
        lines = text.splitlines()
        assert lines[0] == '# config: {"run": {"k": 0.8}}'
        assert lines[1] == "t,x"
        assert lines[2] == "0.0,1.5"
        assert lines[3] == "0.1,-2.0"

    def test_render_json_puts_config_first(self):
        """The config object leads the document."""
        document = json.loads(render_json({"value": 1.5}, {"model": {"N": 100}}))
        assert list(document) == ["config", "value"]

    def test_render_json_non_finite_is_null(self):
        """inf and nan become null at any depth, so strict parsers accept the text."""

        def reject(token):
            raise ValueError(f"non-standard JSON token {token}")

        text = render_json({"period": float("inf"), "fits": {"r2": float("nan")}, "values": [1.0, -float("inf")]})
        document = json.loads(text, parse_constant=reject)
        assert document == {"period": None, "fits": {"r2": None}, "values": [1.0, None]}

    def test_write_to_file(self, tmp_path):
        """Writers honour the output path."""
        csv_path = tmp_path / "out.csv"
        json_path = tmp_path / "out.json"
        write_csv(("a",), [(1.0,)], csv_path)
        write_json({"a": 1.0}, json_path)
        assert csv_path.read_text() == "a\n1.0\n"
        assert json.loads(json_path.read_text()) == {"a": 1.0}

    def test_write_to_stdout(self, capsys):
        """Without a path output goes to stdout."""
        write_csv(("a",), [(2.0,)])
        assert capsys.readouterr().out == "a\n2.0\n"


class TestCheckWritable:
    """Tests for check_writable."""

    def test_ok(self, tmp_path):
        """A new file in an existing directory is fine."""
        check_writable(tmp_path / "new.csv")
        check_writable(None)

    def test_missing_directory(self, tmp_path):
        """The parent directory must exist."""
        with pytest.raises(ConfigError):
            check_writable(tmp_path / "missing" / "out.csv")

    def test_directory_target(self, tmp_path):
        """A directory is not an output file."""
        with pytest.raises(ConfigError):
            check_writable(tmp_path)


class TestSweepProgress:
    """Tests for the progress bar wrapper."""

    def test_advance_callable(self):
        """The yielded callback can be called once per item."""
        with sweep_progress(3, "test") as advance:
            for _ in range(3):
                advance()
