"""Extended Dicke model parameters, critical coupling, phases and fixed points.

Natural units (hbar = 1). The superspin is S = N/2 for N two-level systems.
"""

from __future__ import annotations

import dataclasses
import math
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from typing import Any

from .errors import InvalidParameterError, UnsupportedRegimeError
from .logging_config import get_logger
from .states import PhaseState

log = get_logger("model")


class Phase(str, Enum):
    NORMAL = "normal"
    SUPERRADIANT = "superradiant"


class FixedPointKind(str, Enum):
    NORMAL_POLE = "normal-pole"
    SUPERRADIANT_PLUS = "superradiant-plus"
    SUPERRADIANT_MINUS = "superradiant-minus"


@dataclass(frozen=True)
class ModelParams:
    """Physical constants of the extended Dicke model.

    Attributes:
        omega: Cavity frequency, > 0.
        omega0: Two-level splitting, > 0.
        coupling: Light-matter coupling lambda, >= 0.
        epsilon: Interaction type; -1 is the ordinary Dicke model.
        spin: Total superspin S = N/2; 2S must be a positive integer.
    """

    omega: float
    omega0: float
    coupling: float
    epsilon: float
    spin: float

    def __post_init__(self) -> None:
        for name in ("omega", "omega0", "coupling", "epsilon", "spin"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
                raise InvalidParameterError(f"{name} must be a finite number, got {value!r}")
        if self.omega <= 0:
            raise InvalidParameterError(f"omega must be > 0, got {self.omega!r}")
        if self.omega0 <= 0:
            raise InvalidParameterError(f"omega0 must be > 0, got {self.omega0!r}")
        if self.coupling < 0:
            raise InvalidParameterError(f"lambda must be >= 0, got {self.coupling!r}")
        if self.spin <= 0 or not float(2 * self.spin).is_integer():
            raise InvalidParameterError(f"spin must be a positive half-integer (S = N/2), got {self.spin!r}")

    @classmethod
    def from_tls_count(cls, n_tls: int, *, omega: float, omega0: float, coupling: float, epsilon: float) -> ModelParams:
        """Build parameters for N two-level systems."""
        if isinstance(n_tls, bool) or int(n_tls) != n_tls or n_tls < 1:
            raise InvalidParameterError(f"N must be a positive integer, got {n_tls!r}")
        return cls(omega=omega, omega0=omega0, coupling=coupling, epsilon=epsilon, spin=int(n_tls) / 2)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> ModelParams:
        """Build parameters from the config object ``{omega, omega0, lambda, epsilon, N}``."""
        missing = [key for key in ("omega", "omega0", "lambda", "epsilon", "N") if key not in data]
        if missing:
            raise InvalidParameterError(f"model config missing keys: {', '.join(missing)}")
        try:
            return cls.from_tls_count(
                data["N"],
                omega=float(data["omega"]),
                omega0=float(data["omega0"]),
                coupling=float(data["lambda"]),
                epsilon=float(data["epsilon"]),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, InvalidParameterError):
                raise
            raise InvalidParameterError(f"invalid model config: {e}") from e

    def to_dict(self) -> dict[str, Any]:
        return {
            "omega": self.omega,
            "omega0": self.omega0,
            "lambda": self.coupling,
            "epsilon": self.epsilon,
            "N": self.n_tls,
        }

    def replace(self, **changes: Any) -> ModelParams:
        return dataclasses.replace(self, **changes)

    @property
    def n_tls(self) -> int:
        return int(round(2 * self.spin))

    @property
    def lmg_rate(self) -> float:
        """Coefficient 8 eps lambda^2 / omega of the reduced spin flow."""
        return 8.0 * self.epsilon * self.coupling**2 / self.omega


def critical_coupling(p: ModelParams) -> float:
    """lambda_c = sqrt(omega omega0 / (8 S |eps|)).

    Raises:
        InvalidParameterError: if epsilon == 0 (no superradiant fixed points).
    """
    if p.epsilon == 0:
        raise InvalidParameterError("critical coupling undefined for epsilon = 0 (degenerate model)")
    return math.sqrt(p.omega * p.omega0 / (8.0 * p.spin * abs(p.epsilon)))


def classify_phase(p: ModelParams) -> Phase:
    """Superradiant iff lambda > lambda_c; the boundary itself is Normal."""
    if p.epsilon == 0:
        return Phase.NORMAL
    return Phase.SUPERRADIANT if p.coupling > critical_coupling(p) else Phase.NORMAL


@dataclass(frozen=True)
class FixedPoint:
    state: PhaseState
    kind: FixedPointKind


def fixed_points(p: ModelParams) -> list[FixedPoint]:
    """Stationary points of the full equations of motion.

    The two poles Sz = -S, +S always exist. Above the critical coupling the
    superradiant pair sits at Sz = omega omega0 / (8 eps lambda^2),
    Sx = -/+ sqrt(S^2 - Sz^2), q = -2 sqrt(2) lambda Sx / omega.
    """
    points = [
        FixedPoint(PhaseState(0.0, 0.0, 0.0, 0.0, -p.spin), FixedPointKind.NORMAL_POLE),
        FixedPoint(PhaseState(0.0, 0.0, 0.0, 0.0, p.spin), FixedPointKind.NORMAL_POLE),
    ]
    if classify_phase(p) is not Phase.SUPERRADIANT:
        return points

    sz = p.omega0 / p.lmg_rate
    sx_abs = math.sqrt((p.spin - sz) * (p.spin + sz))
    q_scale = 2.0 * math.sqrt(2.0) * p.coupling / p.omega
    for sx, kind in ((-sx_abs, FixedPointKind.SUPERRADIANT_PLUS), (sx_abs, FixedPointKind.SUPERRADIANT_MINUS)):
        points.append(FixedPoint(PhaseState(-q_scale * sx, 0.0, sx, 0.0, sz), kind))
    log.debug(f"Superradiant fixed points at Sz = {sz!r}, |Sx| = {sx_abs!r}")
    return points


def require_battery_regime(p: ModelParams) -> None:
    """Battery and bound-luminosity operations need -1 <= epsilon < 0.

    Raises:
        UnsupportedRegimeError: otherwise.
    """
    if not (-1.0 <= p.epsilon < 0.0):
        raise UnsupportedRegimeError(f"bound-luminosity battery requires -1 <= epsilon < 0, got epsilon = {p.epsilon!r}")
