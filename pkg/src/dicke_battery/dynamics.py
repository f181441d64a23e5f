"""Equations of motion, coordinate maps and the adaptive ODE integrator."""

from __future__ import annotations

import math
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Any, Union

import numpy as np
from scipy.integrate import solve_ivp

from .constants import ATOL_FACTOR, DEFAULT_METHOD, DEFAULT_TOL, MAX_TOL, MIN_TOL, SUPPORTED_METHODS, UNIT_NORM_TOL
from .errors import DivergenceError, InvalidParameterError, PoleSingularityError, StiffnessError
from .logging_config import get_logger
from .model import ModelParams
from .states import CanonicalSpin, PhaseState, SpinVector
from .systems import EquationSystem, get_registry
from .systems.standard import full_hamiltonian, lmg_energy, qphi_energy

log = get_logger("dynamics")

State = Union[PhaseState, SpinVector, CanonicalSpin]

__all__ = [
    "Trajectory",
    "canonical_to_spin",
    "full_hamiltonian",
    "full_rhs",
    "integrate",
    "lmg_energy",
    "qphi_energy",
    "qphi_rhs",
    "reduced_rhs",
    "spin_to_canonical",
]


def full_rhs(s: PhaseState, p: ModelParams) -> PhaseState:
    """Time derivative of a full-system state, returned in the same layout."""
    system = get_registry().require("full")
    return PhaseState.from_array(system.vector_field(0.0, s.as_array(), p))


def reduced_rhs(s: SpinVector, p: ModelParams) -> SpinVector:
    """Time derivative of the superspin under the reduced (LMG) flow."""
    system = get_registry().require("reduced")
    system.validate(p)
    return SpinVector.from_array(system.vector_field(0.0, s.as_array(), p))


def qphi_rhs(s: CanonicalSpin, p: ModelParams) -> CanonicalSpin:
    """Time derivative of the canonical pair (Q, phi); ordinary Dicke case only."""
    system = get_registry().require("qphi")
    system.validate(p)
    return CanonicalSpin.from_array(system.vector_field(0.0, s.as_array(), p))


def spin_to_canonical(s: SpinVector, spin: float, pole_phi: float | None = None) -> CanonicalSpin:
    """Map a spin of length ``spin`` to (Q, phi) with Q = 2 Sz, phi = atan2(Sy, Sx).

    Args:
        s: Spin vector; its length must equal ``spin`` to UNIT_NORM_TOL.
        spin: Superspin S.
        pole_phi: Angle to report at the poles. None (default) raises instead.

    Raises:
        InvalidParameterError: if |s| differs from S.
        PoleSingularityError: at a pole when ``pole_phi`` is None.
    """
    norm = math.sqrt(s.norm2)
    if abs(norm - spin) > UNIT_NORM_TOL * spin:
        raise InvalidParameterError(f"spin length {norm!r} differs from S = {spin!r}")
    if s.sx == 0.0 and s.sy == 0.0:
        if pole_phi is None:
            raise PoleSingularityError(f"azimuthal angle undefined at the pole Sz = {s.sz!r}")
        return CanonicalSpin(2.0 * s.sz, pole_phi)
    return CanonicalSpin(2.0 * s.sz, math.atan2(s.sy, s.sx))


def canonical_to_spin(c: CanonicalSpin, spin: float) -> SpinVector:
    """Inverse of :func:`spin_to_canonical`.

    Raises:
        InvalidParameterError: if |Q| > 2S.
    """
    sz = 0.5 * c.big_q
    if abs(sz) > spin * (1.0 + UNIT_NORM_TOL):
        raise InvalidParameterError(f"|Q| = {abs(c.big_q)!r} exceeds 2S = {2 * spin!r}")
    transverse = math.sqrt(max(0.0, (spin - sz) * (spin + sz)))
    return SpinVector(transverse * math.cos(c.phi), transverse * math.sin(c.phi), sz)


@dataclass(eq=False)
class Trajectory:
    """Sampled solution of one integration run.

    ``values`` has shape (n, dim) in the system's column order; ``energy`` and
    ``spin_norm2`` are evaluated at the output samples.
    """

    system: EquationSystem
    params: ModelParams
    times: np.ndarray
    values: np.ndarray
    energy: np.ndarray
    spin_norm2: np.ndarray

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def states(self) -> list[Any]:
        return [self.system.unpack(row) for row in self.values]

    def column(self, name: str) -> np.ndarray:
        """Time series of one state column (e.g. "sx")."""
        try:
            index = self.system.columns.index(name)
        except ValueError as e:
            raise KeyError(f"{self.system.get_name()} trajectory has no column '{name}'") from e
        return self.values[:, index]

    def energy_drift(self) -> float:
        """max |H(t) - H(0)| relative to |H(0)| (absolute when H(0) = 0)."""
        h0 = float(self.energy[0])
        scale = abs(h0) if h0 != 0.0 else 1.0
        return float(np.max(np.abs(self.energy - h0)) / scale)

    def spin_norm_drift(self) -> float:
        """max |S(t)^2 - S^2| / S^2."""
        s2 = self.params.spin**2
        return float(np.max(np.abs(self.spin_norm2 - s2)) / s2)

    @property
    def header(self) -> list[str]:
        return ["t", *self.system.columns, self.system.energy_label, "spin_norm2"]

    def rows(self) -> Iterator[tuple[float, ...]]:
        for i in range(len(self)):
            yield (float(self.times[i]), *map(float, self.values[i]), float(self.energy[i]), float(self.spin_norm2[i]))

    def summary(self) -> dict[str, Any]:
        return {
            "system": self.system.get_name(),
            "samples": len(self),
            "t_end": float(self.times[-1]),
            "energy_drift": self.energy_drift(),
            "spin_norm_drift": self.spin_norm_drift(),
        }


def output_grid(t_end: float, dt_out: float) -> np.ndarray:
    """Uniform grid 0, dt_out, 2 dt_out, ... closed with t_end."""
    n = int(math.floor(t_end / dt_out * (1.0 + 1e-12)))
    grid = dt_out * np.arange(n + 1)
    grid = grid[grid < t_end * (1.0 - 1e-12)]
    return np.append(grid, t_end)


def _check_run_options(t_end: float, dt_out: float, tol: float, method: str) -> None:
    if not (math.isfinite(t_end) and t_end > 0):
        raise InvalidParameterError(f"t_end must be > 0, got {t_end!r}")
    if not (math.isfinite(dt_out) and dt_out > 0):
        raise InvalidParameterError(f"dt_out must be > 0, got {dt_out!r}")
    if not (MIN_TOL <= tol <= MAX_TOL):
        raise InvalidParameterError(f"tol must lie in [{MIN_TOL!r}, {MAX_TOL!r}], got {tol!r}")
    if method not in SUPPORTED_METHODS:
        raise InvalidParameterError(f"method must be one of {', '.join(SUPPORTED_METHODS)}, got '{method}'")


def integrate(
    system: str | EquationSystem,
    initial: State | np.ndarray,
    p: ModelParams,
    t_end: float,
    dt_out: float,
    tol: float = DEFAULT_TOL,
    method: str = DEFAULT_METHOD,
) -> Trajectory:
    """Integrate one equation system with an embedded adaptive Runge-Kutta scheme.

    Relative error per step is controlled to ``tol``; the absolute tolerance is
    ``ATOL_FACTOR * tol * max(1, |y0|_inf)``. Output is taken on a uniform
    ``dt_out`` grid from the solver's dense interpolant.

    Raises:
        InvalidParameterError: for bad options or an initial state of the wrong size.
        UnsupportedRegimeError: if the system is not defined for ``p``.
        StiffnessError: if the step size underflows.
        DivergenceError: if the state becomes non-finite.
    """
    eq = get_registry().require(system) if isinstance(system, str) else system
    _check_run_options(t_end, dt_out, tol, method)
    eq.validate(p)

    y0 = eq.pack(initial) if not isinstance(initial, np.ndarray) else np.asarray(initial, dtype=float)
    y0 = eq.pack(eq.unpack(y0))
    if not np.all(np.isfinite(y0)):
        raise InvalidParameterError("initial state must be finite")

    last_t = [0.0]

    def rhs(t: float, y: np.ndarray) -> np.ndarray:
        last_t[0] = t
        if not np.all(np.isfinite(y)):
            raise DivergenceError("state became non-finite", t)
        dy = eq.vector_field(t, y, p)
        if not np.all(np.isfinite(dy)):
            raise DivergenceError("derivative became non-finite", t)
        return dy

    grid = output_grid(t_end, dt_out)
    atol = ATOL_FACTOR * tol * max(1.0, float(np.max(np.abs(y0))))
    sol = solve_ivp(rhs, (0.0, t_end), y0, method=method, t_eval=grid, rtol=tol, atol=atol)

    if sol.status == -1:
        raise StiffnessError(f"{eq.get_name()} integration failed: {sol.message}", last_t[0])
    if not np.all(np.isfinite(sol.y)):
        raise DivergenceError("state became non-finite", last_t[0])

    log.debug(f"{eq.get_name()} integration: {sol.nfev} evaluations, {sol.t.size} samples, method {method}")
    return Trajectory(
        system=eq,
        params=p,
        times=sol.t,
        values=sol.y.T.copy(),
        energy=np.asarray(eq.energy(sol.y, p), dtype=float),
        spin_norm2=np.asarray(eq.spin_norm2(sol.y, p), dtype=float),
    )
