"""Built-in equation systems: full condensate-superspin, reduced spin, canonical Q-phi."""

from __future__ import annotations

import math

import numpy as np

from ..errors import InvalidParameterError, UnsupportedRegimeError
from ..model import ModelParams
from ..states import CanonicalSpin, PhaseState, SpinVector
from .base import EquationSystem

SQRT2 = math.sqrt(2.0)


def _check_shape(system: EquationSystem, values: np.ndarray) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.shape[0] != system.dim:
        raise InvalidParameterError(
            f"{system.get_name()} state needs {system.dim} components ({', '.join(system.columns)}), got {arr.shape[0]}"
        )
    return arr


class FullSystem(EquationSystem):
    """Cavity mode (q, p) coupled to the superspin, all five variables."""

    columns = ("q", "p", "sx", "sy", "sz")
    energy_label = "H"

    def get_name(self) -> str:
        return "full"

    def pack(self, state: PhaseState) -> np.ndarray:
        return state.as_array()

    def unpack(self, values: np.ndarray) -> PhaseState:
        return PhaseState.from_array(_check_shape(self, values))

    def vector_field(self, t: float, y: np.ndarray, params: ModelParams) -> np.ndarray:
        q, p, sx, sy, sz = y
        g = 2.0 * SQRT2 * params.coupling
        direct = (1.0 + params.epsilon) * 8.0 * params.coupling**2 / params.omega
        return np.array(
            [
                params.omega * p,
                -params.omega * q - g * sx,
                -params.omega0 * sy,
                params.omega0 * sx - g * q * sz - direct * sx * sz,
                g * q * sy + direct * sx * sy,
            ]
        )

    def energy(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        return full_hamiltonian(y, params)

    def spin_norm2(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        return y[2] ** 2 + y[3] ** 2 + y[4] ** 2


class ReducedSystem(EquationSystem):
    """Superspin with the cavity slaved adiabatically, generated by the LMG Hamiltonian."""

    columns = ("sx", "sy", "sz")
    energy_label = "H_lmg"

    def get_name(self) -> str:
        return "reduced"

    def validate(self, params: ModelParams) -> None:
        if params.epsilon >= 0:
            raise UnsupportedRegimeError(f"reduced system requires epsilon < 0, got {params.epsilon!r}")

    def pack(self, state: SpinVector) -> np.ndarray:
        return state.as_array()

    def unpack(self, values: np.ndarray) -> SpinVector:
        return SpinVector.from_array(_check_shape(self, values))

    def vector_field(self, t: float, y: np.ndarray, params: ModelParams) -> np.ndarray:
        sx, sy, sz = y
        rate = params.lmg_rate
        return np.array(
            [
                -params.omega0 * sy,
                params.omega0 * sx - rate * sx * sz,
                rate * sx * sy,
            ]
        )

    def energy(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        return lmg_energy(y, params)

    def spin_norm2(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        return y[0] ** 2 + y[1] ** 2 + y[2] ** 2


class QPhiSystem(EquationSystem):
    """Canonical pair Q = 2 Sz, phi = atan2(Sy, Sx) for the ordinary Dicke case."""

    columns = ("Q", "phi")
    energy_label = "H_lmg"

    def get_name(self) -> str:
        return "qphi"

    def validate(self, params: ModelParams) -> None:
        if params.epsilon != -1.0:
            raise UnsupportedRegimeError(f"qphi system is defined for epsilon = -1 only, got {params.epsilon!r}")

    def pack(self, state: CanonicalSpin) -> np.ndarray:
        return state.as_array()

    def unpack(self, values: np.ndarray) -> CanonicalSpin:
        return CanonicalSpin.from_array(_check_shape(self, values))

    def vector_field(self, t: float, y: np.ndarray, params: ModelParams) -> np.ndarray:
        big_q, phi = y
        ratio = params.coupling**2 / params.omega
        return np.array(
            [
                -2.0 * ratio * (4.0 * params.spin**2 - big_q**2) * math.sin(2.0 * phi),
                params.omega0 + 4.0 * ratio * big_q * math.cos(phi) ** 2,
            ]
        )

    def energy(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        return qphi_energy(y, params)

    def spin_norm2(self, y: np.ndarray, params: ModelParams) -> np.ndarray:
        big_q = np.asarray(y[0])
        transverse2 = np.maximum(0.0, params.spin**2 - 0.25 * big_q**2)
        return transverse2 + 0.25 * big_q**2


def full_hamiltonian(y: np.ndarray, params: ModelParams) -> np.ndarray:
    """H = omega (q^2 + p^2)/2 + omega0 Sz + 2 sqrt(2) lambda q Sx + (1 + eps)(4 lambda^2/omega) Sx^2."""
    q, p, sx, _sy, sz = y
    return (
        0.5 * params.omega * (q**2 + p**2)
        + params.omega0 * sz
        + 2.0 * SQRT2 * params.coupling * q * sx
        + (1.0 + params.epsilon) * 4.0 * params.coupling**2 / params.omega * sx**2
    )


def lmg_energy(y: np.ndarray, params: ModelParams) -> np.ndarray:
    """E = omega0 Sz + (4 eps lambda^2/omega) Sx^2 for y = (Sx, Sy, Sz)."""
    sx, _sy, sz = y
    return params.omega0 * sz + 0.5 * params.lmg_rate * sx**2


def qphi_energy(y: np.ndarray, params: ModelParams) -> np.ndarray:
    """LMG energy in canonical coordinates, epsilon = -1."""
    big_q, phi = y
    transverse2 = np.maximum(0.0, params.spin**2 - 0.25 * np.asarray(big_q) ** 2)
    return 0.5 * params.omega0 * big_q - 4.0 * params.coupling**2 / params.omega * transverse2 * np.cos(phi) ** 2
