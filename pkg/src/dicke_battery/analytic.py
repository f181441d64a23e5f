"""Closed-form bound luminosity solution of the reduced spin dynamics.

With a = 8 eps lambda^2 / omega the reduced flow conserves
E = omega0 Sz + (a/2) Sx^2, and Sx obeys

    (dSx/dt)^2 + U(Sx) = C,   U(Sx) = -(a E - omega0^2) Sx^2 + (a^2/4) Sx^4,

solved by Sx(t) = +/- A dn(Omega t, k) with amplitude A = 2 Omega / |a|.
The modulus k is the free parameter; Omega follows from the biquadratic

    k^4 x^2 + 2 (2 - k^2) omega0^2 x + omega0^2 (omega0^2 - a^2 S^2) = 0,  x = Omega^2,

whose constant term is negative exactly above the critical coupling, so it
has a single positive root there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np

from .constants import NORM_RELATION_TOL, OMEGA_RESIDUAL_TOL
from .elliptic import ArrayLike, Regime, classify_modulus, complete_elliptic_k, jacobi_functions
from .errors import (
    AnalyticConsistencyError,
    InfeasibleModulusError,
    InvalidParameterError,
    NoRealSolutionError,
)
from .logging_config import get_logger
from .model import ModelParams, critical_coupling, require_battery_regime
from .states import PhaseState, SpinVector

log = get_logger("analytic")


class Branch(str, Enum):
    """Sign of Sx on the bound luminosity orbit."""

    PLUS = "plus"
    MINUS = "minus"

    @property
    def sigma(self) -> float:
        return 1.0 if self is Branch.PLUS else -1.0


def _check_k(k: float) -> float:
    k = float(k)
    if not (math.isfinite(k) and k > 0):
        raise InvalidParameterError(f"modulus k must be finite and > 0, got {k!r}")
    return k


def _biquadratic(p: ModelParams, k: float) -> tuple[float, float, float]:
    """Coefficients (k^4, 2 (2 - k^2) omega0^2, omega0^2 (omega0^2 - a^2 S^2)) of the quadratic in Omega^2."""
    w2 = p.omega0**2
    return k**4, 2.0 * (2.0 - k**2) * w2, w2 * (w2 - (p.lmg_rate * p.spin) ** 2)


def omega_residual(p: ModelParams, k: float, omega_big: float) -> float:
    """Residual of the biquadratic at ``omega_big``, relative to its largest term."""
    a2, b, c = _biquadratic(p, k)
    x = omega_big**2
    terms = (a2 * x * x, b * x, c)
    scale = max(abs(term) for term in terms)
    return abs(sum(terms)) / scale if scale > 0 else 0.0


def _solve_x(p: ModelParams, k: float) -> tuple[float, float]:
    """Positive root x = Omega^2 and the other root of the quadratic."""
    a2, b, c = _biquadratic(p, k)
    half_b = 0.5 * b
    disc = half_b * half_b - a2 * c
    if c >= 0 or disc < 0:
        raise NoRealSolutionError(
            f"no real beat frequency: lambda = {p.coupling!r} must exceed lambda_c = {critical_coupling(p)!r}"
        )
    root = math.sqrt(disc)
    x = -c / (half_b + root) if half_b >= 0 else (root - half_b) / a2
    return x, c / (a2 * x)


def solve_omega(p: ModelParams, k: float) -> float:
    """Beat frequency Omega(k) from the biquadratic.

    Raises:
        UnsupportedRegimeError: unless -1 <= epsilon < 0.
        InvalidParameterError: for k <= 0.
        NoRealSolutionError: if lambda <= lambda_c.
        InfeasibleModulusError: if the orbit amplitude would exceed S.
    """
    require_battery_regime(p)
    k = _check_k(k)
    if p.coupling <= critical_coupling(p):
        raise NoRealSolutionError(
            f"no real beat frequency: lambda = {p.coupling!r} must exceed lambda_c = {critical_coupling(p)!r}"
        )
    x, _ = _solve_x(p, k)
    omega_big = math.sqrt(x)
    amplitude = 2.0 * omega_big / abs(p.lmg_rate)
    if amplitude > p.spin * (1.0 + NORM_RELATION_TOL):
        raise InfeasibleModulusError(f"k = {k!r} gives amplitude {amplitude!r} above S = {p.spin!r}")
    return omega_big


def omega_asymptotic(p: ModelParams, k: float) -> float:
    """Large-S beat frequency (2 sqrt(2) lambda / k) sqrt(|eps| omega0 S / omega)."""
    require_battery_regime(p)
    k = _check_k(k)
    return 2.0 * math.sqrt(2.0) * p.coupling / k * math.sqrt(abs(p.epsilon) * p.omega0 * p.spin / p.omega)


@dataclass(frozen=True)
class BoundLuminositySolution:
    """Integration constants of one bound luminosity orbit.

    Attributes:
        params: Model parameters.
        k: Jacobi modulus.
        omega_big: Beat frequency Omega.
        energy_e: LMG energy E.
        const_c: Constant C of the double-well equation.
        branch: Sign of Sx.
        discarded_root: The other root of the quadratic in Omega^2 (never positive
            above the critical coupling).
    """

    params: ModelParams
    k: float
    omega_big: float
    energy_e: float
    const_c: float
    branch: Branch = Branch.MINUS
    discarded_root: float | None = None

    @property
    def amplitude(self) -> float:
        """Maximum |Sx|, omega Omega / (4 lambda^2 |eps|)."""
        return 2.0 * self.omega_big / abs(self.params.lmg_rate)

    @property
    def regime(self) -> Regime:
        return classify_modulus(self.k)

    @property
    def period(self) -> float:
        """Period of the spin orbit; infinite on the separatrix."""
        regime = self.regime
        if regime is Regime.SEPARATRIX:
            return math.inf
        if regime is Regime.OSCILLATING:
            return 2.0 * complete_elliptic_k(self.k) / self.omega_big
        # dn(u, k) = cn(k u, 1/k) changes sign every half period
        return 4.0 * complete_elliptic_k(1.0 / self.k) / (self.omega_big * self.k)

    def summary(self) -> dict[str, Any]:
        return {
            "k": self.k,
            "Omega": self.omega_big,
            "E": self.energy_e,
            "C": self.const_c,
            "lambda_c": critical_coupling(self.params),
            "regime": self.regime.value,
            "amplitude": self.amplitude,
            "branch": self.branch.value,
            "period": self.period if math.isfinite(self.period) else None,
        }


def spin_norm_relation(sol: BoundLuminositySolution) -> float:
    """|S|^2 implied by (k, Omega, E): (4/a^2)[Omega^2 + (a E/2 - Omega^2)^2 / omega0^2]."""
    a = sol.params.lmg_rate
    x = sol.omega_big**2
    return 4.0 / a**2 * (x + (0.5 * a * sol.energy_e - x) ** 2 / sol.params.omega0**2)


def build_solution(p: ModelParams, k: float, sign: Branch | str = Branch.MINUS) -> BoundLuminositySolution:
    """Solve for Omega and package E and C; the solution is checked before it is returned.

    Raises:
        AnalyticConsistencyError: if the biquadratic residual or the spin-norm
            relation misses its tolerance.
        Also everything :func:`solve_omega` raises.
    """
    branch = Branch(sign)
    omega_big = solve_omega(p, k)
    x = omega_big**2
    a = p.lmg_rate
    energy_e = ((2.0 - k**2) * x + p.omega0**2) / a
    const_c = (k**2 - 1.0) * 4.0 * x * x / a**2
    _, other = _solve_x(p, k)
    sol = BoundLuminositySolution(p, float(k), omega_big, energy_e, const_c, branch, other)
    log.debug(f"k = {k!r}: Omega = {omega_big!r}, E = {energy_e!r}, discarded root {other!r}")

    residual = omega_residual(p, k, omega_big)
    if residual > OMEGA_RESIDUAL_TOL:
        raise AnalyticConsistencyError(f"biquadratic residual {residual!r} exceeds {OMEGA_RESIDUAL_TOL!r}")
    norm_error = abs(spin_norm_relation(sol) - p.spin**2) / p.spin**2
    if norm_error > NORM_RELATION_TOL:
        raise AnalyticConsistencyError(f"spin-norm relation violated by {norm_error!r}")
    return sol


def spin_components(sol: BoundLuminositySolution, t: ArrayLike) -> tuple[ArrayLike, ArrayLike, ArrayLike]:
    """(Sx, Sy, Sz) on the orbit at times ``t`` (scalar or array)."""
    p = sol.params
    sn, cn, dn = jacobi_functions(sol.omega_big * np.asarray(t, dtype=float), sol.k)
    scale = sol.branch.sigma * sol.amplitude
    sx = scale * dn
    # d dn/du = -k^2 sn cn for every modulus, so Sy = -(dSx/dt)/omega0
    sy = scale * sol.omega_big * sol.k**2 * sn * cn / p.omega0
    sz = (sol.energy_e - 0.5 * p.lmg_rate * sx**2) / p.omega0
    return sx, sy, sz


def spin_trajectory(sol: BoundLuminositySolution, t: float) -> SpinVector:
    """Spin vector on the orbit at time ``t``."""
    sx, sy, sz = spin_components(sol, float(t))
    return SpinVector(float(sx), float(sy), float(sz))


def sx_rate(sol: BoundLuminositySolution, t: ArrayLike) -> ArrayLike:
    """dSx/dt along the orbit."""
    sn, cn, _ = jacobi_functions(sol.omega_big * np.asarray(t, dtype=float), sol.k)
    return -sol.branch.sigma * sol.amplitude * sol.omega_big * sol.k**2 * sn * cn


def effective_potential(sol: BoundLuminositySolution, sx: ArrayLike) -> ArrayLike:
    """Double-well potential U(Sx); meaningful for |Sx| <= S."""
    a = sol.params.lmg_rate
    sx = np.asarray(sx, dtype=float)
    u = -(a * sol.energy_e - sol.params.omega0**2) * sx**2 + 0.25 * a * a * sx**4
    return float(u) if u.ndim == 0 else u


def potential_minima(sol: BoundLuminositySolution) -> tuple[float, ...]:
    """Positions of the minima of U: (-m, m) for a double well, (0,) otherwise."""
    a = sol.params.lmg_rate
    curvature = a * sol.energy_e - sol.params.omega0**2
    if curvature <= 0:
        return (0.0,)
    m = math.sqrt(2.0 * curvature) / abs(a)
    return (-m, m)


def potential_regime(sol: BoundLuminositySolution) -> Regime:
    """Orbit position relative to the barrier: below it (C < 0), on it, or above it (C > 0)."""
    if classify_modulus(sol.k) is Regime.SEPARATRIX:
        return Regime.SEPARATRIX
    return Regime.OSCILLATING if sol.const_c < 0 else Regime.ROTATING


def adiabatic_phase_state(sol: BoundLuminositySolution, t: float = 0.0) -> PhaseState:
    """Full-system state on the orbit with the cavity slaved: q = -2 sqrt(2) lambda Sx / omega, p = dq/dt / omega."""
    p = sol.params
    spin = spin_trajectory(sol, t)
    g = 2.0 * math.sqrt(2.0) * p.coupling / p.omega
    q = -g * spin.sx
    momentum = -g * float(sx_rate(sol, t)) / p.omega
    return PhaseState(q, momentum, spin.sx, spin.sy, spin.sz)
