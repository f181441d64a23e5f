"""Battery observables on the bound luminosity orbit and their N-scaling.

The battery is the two-level ensemble; its energy is measured from the
discharged state at t = 0:

    k < 1:  E_B(t) = B [dn^2(Omega t + K(k), k) - 1 + k^2]
    k > 1:  E_B(t) = B cn^2(Omega k t + K(1/k), 1/k)
    k = 1:  E_B(t) = B tanh^2(Omega t)

with B = omega Omega^2 / (4 |eps| lambda^2).
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from .analytic import BoundLuminositySolution, build_solution
from .constants import DEFAULT_CURVE_SAMPLES, DEFAULT_RATIO, MIN_DECADES, MIN_FIT_POINTS, R_SQUARED_THRESHOLD
from .elliptic import ArrayLike, Regime, complete_elliptic_k, jacobi_functions
from .errors import ComputationError, InsufficientDataError, InvalidParameterError
from .logging_config import get_logger
from .model import ModelParams, critical_coupling, require_battery_regime

log = get_logger("battery")


def energy_scale(p: ModelParams, omega_big: float) -> float:
    """B = omega Omega^2 / (4 |eps| lambda^2)."""
    require_battery_regime(p)
    return p.omega * omega_big**2 / (4.0 * abs(p.epsilon) * p.coupling**2)


def _times(t: ArrayLike) -> np.ndarray:
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise InvalidParameterError("battery time must be >= 0")
    return arr


def _scalar_or_array(values: np.ndarray) -> ArrayLike:
    return float(values) if np.ndim(values) == 0 else values


def battery_energy(sol: BoundLuminositySolution, t: ArrayLike) -> ArrayLike:
    """Energy E_B(t) stored in the two-level ensemble."""
    b = energy_scale(sol.params, sol.omega_big)
    tt = _times(t)
    k = sol.k
    regime = sol.regime
    if regime is Regime.OSCILLATING:
        _, _, dn = jacobi_functions(sol.omega_big * tt + complete_elliptic_k(k), k)
        values = b * (np.asarray(dn) ** 2 - 1.0 + k * k)
    elif regime is Regime.ROTATING:
        _, cn, _ = jacobi_functions(sol.omega_big * k * tt + complete_elliptic_k(1.0 / k), 1.0 / k)
        values = b * np.asarray(cn) ** 2
    else:
        values = b * np.tanh(sol.omega_big * tt) ** 2
    return _scalar_or_array(values)


def charging_time(sol: BoundLuminositySolution) -> float:
    """Time t_c from the discharged state to the first energy maximum."""
    if sol.regime is Regime.OSCILLATING:
        return complete_elliptic_k(sol.k) / sol.omega_big
    if sol.regime is Regime.ROTATING:
        return complete_elliptic_k(1.0 / sol.k) / (sol.omega_big * sol.k)
    return 1.0 / sol.omega_big


def charging_period(sol: BoundLuminositySolution) -> float:
    """Period of E_B(t); infinite on the separatrix."""
    if sol.regime is Regime.SEPARATRIX:
        return math.inf
    return 2.0 * charging_time(sol)


def max_energy(sol: BoundLuminositySolution) -> float:
    """E_B at the charging time: k^2 B below the separatrix, B otherwise."""
    b = energy_scale(sol.params, sol.omega_big)
    return sol.k**2 * b if sol.regime is Regime.OSCILLATING else b


def charging_power(sol: BoundLuminositySolution, t: ArrayLike) -> ArrayLike:
    """P(t) = dE_B/dt, the exact derivative of :func:`battery_energy`."""
    b = energy_scale(sol.params, sol.omega_big)
    tt = _times(t)
    omega_big = sol.omega_big
    k = sol.k
    if sol.regime is Regime.OSCILLATING:
        sn, cn, dn = jacobi_functions(omega_big * tt + complete_elliptic_k(k), k)
        values = -2.0 * b * omega_big * k * k * np.asarray(sn) * cn * dn
    elif sol.regime is Regime.ROTATING:
        sn, cn, dn = jacobi_functions(omega_big * k * tt + complete_elliptic_k(1.0 / k), 1.0 / k)
        values = -2.0 * b * omega_big * k * np.asarray(sn) * cn * dn
    else:
        decay = np.exp(-np.abs(omega_big * tt))
        sech = 2.0 * decay / (1.0 + decay * decay)
        values = 2.0 * b * omega_big * np.tanh(omega_big * tt) * sech**2
    return _scalar_or_array(values)


def peak_power(sol: BoundLuminositySolution) -> float:
    """Maximum of P(t) over the charging interval [0, t_c]."""
    t_c = charging_time(sol)
    grid = np.linspace(0.0, t_c, 257)
    coarse = np.asarray(charging_power(sol, grid))
    i = int(np.argmax(coarse))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, grid.size - 1)]
    result = minimize_scalar(
        lambda t: -float(charging_power(sol, t)),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12 * t_c},
    )
    return max(float(coarse[i]), -float(result.fun))


@dataclass(eq=False)
class BatteryCurve:
    """Sampled E_B(t) and P(t) of one orbit."""

    sol: BoundLuminositySolution
    times: np.ndarray
    energy: np.ndarray
    power: np.ndarray
    t_c: float
    e_max: float

    header = ("t", "E_B", "P")

    def rows(self) -> Iterable[tuple[float, float, float]]:
        return zip(map(float, self.times), map(float, self.energy), map(float, self.power))

    def to_dict(self) -> dict[str, Any]:
        return {
            "k": self.sol.k,
            "t_c": self.t_c,
            "e_max": self.e_max,
            "samples": [{"t": t, "E_B": e, "P": pw} for t, e, pw in self.rows()],
        }


def battery_curve(
    sol: BoundLuminositySolution, t_end: float | None = None, samples: int = DEFAULT_CURVE_SAMPLES
) -> BatteryCurve:
    """Sample E_B and P on [0, t_end]; the default span is one period (six t_c on the separatrix)."""
    if samples < 2:
        raise InvalidParameterError(f"samples must be >= 2, got {samples!r}")
    t_c = charging_time(sol)
    if t_end is None:
        period = charging_period(sol)
        t_end = period if math.isfinite(period) else 6.0 * t_c
    times = np.linspace(0.0, t_end, samples)
    return BatteryCurve(
        sol=sol,
        times=times,
        energy=np.asarray(battery_energy(sol, times)),
        power=np.asarray(charging_power(sol, times)),
        t_c=t_c,
        e_max=max_energy(sol),
    )


@dataclass(frozen=True)
class PowerLawFit:
    """Least-squares fit of log y = exponent * log x + log prefactor."""

    exponent: float
    prefactor: float
    r_squared: float
    n_points: int

    def to_dict(self) -> dict[str, float]:
        return {"exponent": self.exponent, "r2": self.r_squared}


def fit_power_law(x: Sequence[float], y: Sequence[float]) -> PowerLawFit:
    """Ordinary least squares on (log x, log y).

    A series constant to rounding is reported as exponent 0 with r^2 = 1.

    Raises:
        InsufficientDataError: with fewer than MIN_FIT_POINTS points.
        InvalidParameterError: for non-positive values.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.size != ys.size:
        raise InvalidParameterError("x and y must have the same length")
    if xs.size < MIN_FIT_POINTS:
        raise InsufficientDataError(f"power-law fit needs at least {MIN_FIT_POINTS} points, got {xs.size}")
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise InvalidParameterError("power-law fit needs positive values")

    lx, ly = np.log(xs), np.log(ys)
    if np.ptp(ly) <= 1e-12 * max(1.0, float(np.max(np.abs(ly)))):
        return PowerLawFit(0.0, float(np.exp(np.mean(ly))), 1.0, int(xs.size))

    slope, intercept = np.polyfit(lx, ly, 1)
    residual = ly - (slope * lx + intercept)
    total = ly - np.mean(ly)
    r_squared = 1.0 - float(np.dot(residual, residual) / np.dot(total, total))
    return PowerLawFit(float(slope), float(np.exp(intercept)), r_squared, int(xs.size))


class ScalingMode(str, Enum):
    FIXED_LAMBDA = "fixed-lambda"  # lambda constant
    FIXED_LAMBDA_RATIO = "fixed-ratio"  # lambda = ratio * lambda_c(N)


@dataclass(frozen=True)
class ScalingEntry:
    n_tls: int
    coupling: float
    omega_big: float
    t_c: float
    e_max: float
    p_max: float
    p_avg: float

    def to_dict(self) -> dict[str, float]:
        return {
            "N": self.n_tls,
            "lambda": self.coupling,
            "Omega": self.omega_big,
            "t_c": self.t_c,
            "e_max": self.e_max,
            "p_max": self.p_max,
            "p_avg": self.p_avg,
        }


@dataclass(frozen=True)
class ScalingReport:
    mode: ScalingMode
    k: float
    entries: list[ScalingEntry]
    fits: dict[str, PowerLawFit]
    failures: dict[int, str] = field(default_factory=dict)
    ratio: float | None = None

    @property
    def exponent_p_avg(self) -> float:
        return self.fits["p_avg"].exponent

    @property
    def exponent_p_max(self) -> float:
        return self.fits["p_max"].exponent

    @property
    def exponent_tc(self) -> float:
        return self.fits["t_c"].exponent

    @property
    def r_squared(self) -> dict[str, float]:
        return {name: fit.r_squared for name, fit in self.fits.items()}

    def passes(self, threshold: float = R_SQUARED_THRESHOLD) -> bool:
        return all(fit.r_squared >= threshold for fit in self.fits.values())

    def to_dict(self) -> dict[str, Any]:
        data: dict[str, Any] = {"mode": self.mode.value, "k": self.k}
        if self.ratio is not None:
            data["ratio"] = self.ratio
        data["entries"] = [entry.to_dict() for entry in self.entries]
        data["fits"] = {name: fit.to_dict() for name, fit in self.fits.items()}
        data["failures"] = {str(n): message for n, message in self.failures.items()}
        return data


def prepare_n_values(n_values: Iterable[int]) -> list[int]:
    """Sorted, deduplicated N grid.

    Raises:
        InvalidParameterError: for odd or non-positive N, fewer than
            MIN_FIT_POINTS distinct values, or a span below MIN_DECADES.
    """
    raw = list(n_values)
    for n in raw:
        if isinstance(n, bool) or int(n) != n or n <= 0:
            raise InvalidParameterError(f"N must be a positive integer, got {n!r}")
        if int(n) % 2:
            raise InvalidParameterError(f"N must be even (N = 2S), got {n!r}")
    unique = sorted({int(n) for n in raw})
    if len(unique) < len(raw):
        log.warning(f"Removed {len(raw) - len(unique)} duplicate N value(s)")
    if len(unique) < MIN_FIT_POINTS:
        raise InvalidParameterError(f"scaling study needs at least {MIN_FIT_POINTS} distinct N values, got {len(unique)}")
    decades = math.log10(unique[-1] / unique[0])
    if decades < MIN_DECADES:
        raise InvalidParameterError(f"N values must span at least {MIN_DECADES} decades, got {decades:.2f}")
    return unique


def scaling_study(
    base: ModelParams,
    n_values: Iterable[int],
    k: float,
    mode: ScalingMode | str = ScalingMode.FIXED_LAMBDA,
    ratio: float = DEFAULT_RATIO,
    workers: int = 1,
    progress: Optional[Callable[[], None]] = None,
) -> ScalingReport:
    """Charging observables over a range of N and their fitted power laws.

    In fixed-lambda mode the coupling of ``base`` is kept; in fixed-ratio mode
    it is set to ``ratio * lambda_c(N)`` for every N. Entries that fail are
    recorded in ``failures`` and left out of the fits.

    Raises:
        InvalidParameterError: for a bad N grid, ratio or worker count.
        InsufficientDataError: if fewer than MIN_FIT_POINTS entries succeed.
    """
    mode = ScalingMode(mode)
    require_battery_regime(base)
    grid = prepare_n_values(n_values)
    if mode is ScalingMode.FIXED_LAMBDA_RATIO and not ratio > 1.0:
        raise InvalidParameterError(f"fixed-ratio mode needs ratio > 1, got {ratio!r}")
    if workers < 1:
        raise InvalidParameterError(f"workers must be >= 1, got {workers!r}")

    def evaluate(n: int) -> ScalingEntry | str:
        params = base.replace(spin=n / 2)
        if mode is ScalingMode.FIXED_LAMBDA_RATIO:
            params = params.replace(coupling=ratio * critical_coupling(params))
        try:
            sol = build_solution(params, k)
            t_c = charging_time(sol)
            e_max = max_energy(sol)
            entry: ScalingEntry | str = ScalingEntry(
                n, params.coupling, sol.omega_big, t_c, e_max, peak_power(sol), e_max / t_c
            )
        except (ComputationError, InvalidParameterError) as e:
            entry = str(e)
        if progress is not None:
            progress()
        return entry

    if workers == 1:
        results = [evaluate(n) for n in grid]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(evaluate, grid))

    entries: list[ScalingEntry] = []
    failures: dict[int, str] = {}
    for n, result in zip(grid, results):
        if isinstance(result, str):
            failures[n] = result
            log.warning(f"N = {n}: {result}")
        else:
            entries.append(result)

    if len(entries) < MIN_FIT_POINTS:
        raise InsufficientDataError(
            f"only {len(entries)} of {len(grid)} N values succeeded; need {MIN_FIT_POINTS}", failures
        )

    ns = [entry.n_tls for entry in entries]
    fits = {
        "p_avg": fit_power_law(ns, [entry.p_avg for entry in entries]),
        "p_max": fit_power_law(ns, [entry.p_max for entry in entries]),
        "t_c": fit_power_law(ns, [entry.t_c for entry in entries]),
    }
    log.debug("Fitted exponents: " + ", ".join(f"{name} {fit.exponent:.4f}" for name, fit in fits.items()))
    return ScalingReport(
        mode=mode,
        k=float(k),
        entries=entries,
        fits=fits,
        failures=failures,
        ratio=ratio if mode is ScalingMode.FIXED_LAMBDA_RATIO else None,
    )
