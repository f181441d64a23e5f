"""Output helpers for dicke_battery: number formatting, CSV/JSON writers, sweep progress."""

from __future__ import annotations

import json
import math
import os
from collections.abc import Callable, Iterable, Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import click
from rich.console import Console
from rich.progress import (
    BarColumn,
    MofNCompleteColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeRemainingColumn,
)

from .errors import ConfigError


def format_float(value: float) -> str:
    """Shortest decimal string that round-trips to the same IEEE-754 double."""
    return repr(float(value))


def check_writable(path: str | Path | None) -> None:
    """Fail before any computation if an output path cannot be written.

    Raises:
        ConfigError: if the target directory is missing or not writable, or the
            path names a directory.
    """
    if path is None:
        return
    target = Path(path)
    if target.is_dir():
        raise ConfigError(f"output path {target} is a directory")
    parent = target.parent if str(target.parent) else Path(".")
    if not parent.exists():
        raise ConfigError(f"output directory {parent} does not exist")
    if target.exists() and not os.access(target, os.W_OK):
        raise ConfigError(f"no write access to {target}")
    if not target.exists() and not os.access(parent, os.W_OK):
        raise ConfigError(f"no write access to {parent}")


def write_text(text: str, path: str | Path | None = None) -> None:
    """Write text to ``path`` or to stdout when ``path`` is None."""
    if path is None:
        click.echo(text, nl=False)
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[float]], config: dict[str, Any] | None = None) -> str:
    """CSV text with the effective config echoed as a leading comment line."""
    lines = []
    if config is not None:
        lines.append("# config: " + json.dumps(config, sort_keys=True))
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(format_float(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    path: str | Path | None = None,
    config: dict[str, Any] | None = None,
) -> None:
    """Write rows as CSV to ``path`` or to stdout when ``path`` is None."""
    write_text(render_csv(header, rows, config), path)


def finite_or_none(value: Any) -> Any:
    """Replace non-finite floats by None, recursing into dicts and lists."""
    if isinstance(value, dict):
        return {key: finite_or_none(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [finite_or_none(item) for item in value]
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def render_json(payload: dict[str, Any], config: dict[str, Any] | None = None) -> str:
    """Strict JSON text; floats use Python's shortest round-trip repr and inf/nan become null."""
    document = dict(payload)
    if config is not None:
        document = {"config": config, **document}
    return json.dumps(finite_or_none(document), indent=2, sort_keys=False, allow_nan=False) + "\n"


def write_json(payload: dict[str, Any], path: str | Path | None = None, config: dict[str, Any] | None = None) -> None:
    """Write a JSON document to ``path`` or to stdout when ``path`` is None."""
    write_text(render_json(payload, config), path)


@contextmanager
def sweep_progress(total: int, description: str) -> Iterator[Callable[[], None]]:
    """Rich progress bar on stderr; yields a callback that advances it by one.

    The bar is disabled when stderr is not a terminal so piped output stays clean.
    """
    console = Console(stderr=True)
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeRemainingColumn(),
        console=console,
        transient=True,
        disable=not console.is_terminal,
    ) as progress:
        task = progress.add_task(description, total=total)

        def advance() -> None:
            progress.update(task, advance=1)

        yield advance
