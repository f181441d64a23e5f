"""Exception hierarchy for dicke_battery.

Every error carries the process exit code the CLI uses for it: 1 for bad
input or configuration, 2 for failures during a computation.
"""

from __future__ import annotations

from collections.abc import Mapping


class DickeBatteryError(Exception):
    """Base class for all dicke_battery errors."""

    exit_code = 2


class ConfigError(DickeBatteryError, ValueError):
    """Configuration file or option could not be used."""

    exit_code = 1


class InvalidParameterError(DickeBatteryError, ValueError):
    """A physical or numerical parameter is outside its domain."""

    exit_code = 1


class UnsupportedRegimeError(InvalidParameterError):
    """Operation requested outside the regime it is defined for (e.g. epsilon >= 0)."""


class EllipticDomainError(InvalidParameterError):
    """Elliptic function called with a non-finite phase or invalid modulus."""


class ComputationError(DickeBatteryError, ArithmeticError):
    """A computation could not produce a valid result."""

    exit_code = 2


class PoleSingularityError(ComputationError):
    """Azimuthal angle requested at a pole of the spin sphere."""


class NoRealSolutionError(ComputationError):
    """Beat frequency has no real solution (coupling at or below critical)."""


class InfeasibleModulusError(ComputationError):
    """No admissible beat frequency for the requested modulus."""


class AnalyticConsistencyError(ComputationError):
    """A closed-form solution failed its own consistency checks."""


class IntegrationError(ComputationError):
    """ODE integration stopped before reaching the end time."""

    def __init__(self, message: str, t_reached: float) -> None:
        super().__init__(f"{message} (reached t = {t_reached!r})")
        self.t_reached = t_reached


class StiffnessError(IntegrationError):
    """Step size underflow."""


class DivergenceError(IntegrationError):
    """State became non-finite."""


class InsufficientDataError(ComputationError):
    """Not enough valid points to fit a power law."""

    def __init__(self, message: str, failures: Mapping[int, str] | None = None) -> None:
        super().__init__(message)
        self.failures = dict(failures or {})
