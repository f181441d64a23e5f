"""Logging for dicke_battery.

Everything goes to stderr under the ``dicke`` logger; stdout carries only the
CSV or JSON a command produces, so output can be piped straight into a file.
"""

from __future__ import annotations

import logging
import sys
from collections.abc import Mapping
from typing import Any

logger = logging.getLogger("dicke")

VERBOSE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
PLAIN_FORMAT = "%(message)s"


def setup_logging(verbose: bool = False, quiet: bool = False) -> logging.Logger:
    """Configure the ``dicke`` logger for one CLI invocation.

    ``quiet`` wins over ``verbose``: warnings and errors only. ``verbose`` adds
    DEBUG records (solver statistics, run parameters) with timestamps.
    """
    if quiet:
        level = logging.WARNING
    elif verbose:
        level = logging.DEBUG
    else:
        level = logging.INFO

    logger.setLevel(level)
    logger.handlers.clear()

    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(
        logging.Formatter(VERBOSE_FORMAT, datefmt="%H:%M:%S") if verbose else logging.Formatter(PLAIN_FORMAT)
    )
    logger.addHandler(handler)
    return logger


def get_logger(name: str | None = None) -> logging.Logger:
    """Child logger ``dicke.<name>`` (e.g. "dynamics", "battery"), or the package logger."""
    if name:
        return logging.getLogger(f"dicke.{name}")
    return logger


def log_run_parameters(command: str, sections: Mapping[str, Mapping[str, Any]]) -> None:
    """One DEBUG line per config section, so a verbose run records what it computed."""
    run_log = get_logger("run")
    if not run_log.isEnabledFor(logging.DEBUG):
        return
    for section, values in sections.items():
        settings = ", ".join(f"{key}={value!r}" for key, value in values.items())
        run_log.debug(f"{command} [{section}] {settings}")
