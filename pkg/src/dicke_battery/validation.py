"""Self-checks run by ``dicke-battery validate``."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import asdict, dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid

from . import analytic, battery, dynamics
from .elliptic import complete_elliptic_k, jacobi_functions
from .errors import DickeBatteryError, InvalidParameterError
from .logging_config import get_logger
from .model import ModelParams, critical_coupling, fixed_points

log = get_logger("validation")

CHECK_MODULI = (0.5, 0.8, 1.2)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    value: float
    tolerance: float
    detail: str = ""

    def to_dict(self) -> dict[str, object]:
        return asdict(self)


def _result(name: str, value: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(name, bool(value <= tolerance), float(value), tolerance, detail)


def check_elliptic_identities() -> CheckResult:
    u = np.linspace(-10.0, 10.0, 100)
    worst = 0.0
    for k in np.linspace(0.0, 0.99, 20):
        sn, cn, dn = jacobi_functions(u, float(k))
        worst = max(worst, float(np.max(np.abs(sn**2 + cn**2 - 1.0))), float(np.max(np.abs(dn**2 + k * k * sn**2 - 1.0))))
    return _result("elliptic identities sn^2+cn^2=1, dn^2+k^2 sn^2=1", worst, 1e-12)


def check_quarter_period() -> CheckResult:
    worst = max(
        abs(float(jacobi_functions(complete_elliptic_k(k), k).dn) - math.sqrt(1.0 - k * k)) for k in (0.3, 0.8, 0.99)
    )
    return _result("dn(K(k), k) = sqrt(1 - k^2)", worst, 1e-10)


def check_reciprocal_modulus() -> CheckResult:
    u = np.linspace(-5.0, 5.0, 50)
    worst = 0.0
    for k in (1.1, 1.5, 3.0):
        sn, cn, dn = jacobi_functions(u, k)
        worst = max(worst, float(np.max(np.abs(sn**2 + cn**2 - 1.0))), float(np.max(np.abs(dn**2 + k * k * sn**2 - 1.0))))
    return _result("identities for k > 1 via reciprocal modulus", worst, 1e-12)


def check_fixed_points(p: ModelParams) -> CheckResult:
    scale = max(1.0, p.spin) * max(1.0, p.omega, p.omega0)
    worst = 0.0
    for point in fixed_points(p):
        derivative = dynamics.full_rhs(point.state, p).as_array()
        worst = max(worst, float(np.max(np.abs(derivative))))
    return _result("fixed points annihilate the full equations", worst / scale, 1e-12)


def check_omega_residual(p: ModelParams, perturb_omega: float = 0.0) -> CheckResult:
    worst = 0.0
    for k in CHECK_MODULI:
        omega_big = analytic.solve_omega(p, k) + perturb_omega
        worst = max(worst, analytic.omega_residual(p, k, omega_big))
    detail = f"Omega perturbed by {perturb_omega!r}" if perturb_omega else ""
    return _result("beat frequency biquadratic residual", worst, 1e-9, detail)


def check_spin_norm(p: ModelParams) -> CheckResult:
    worst = 0.0
    for k in CHECK_MODULI:
        sol = analytic.build_solution(p, k)
        t = np.linspace(0.0, 3.0 / sol.omega_big, 64)
        sx, sy, sz = analytic.spin_components(sol, t)
        worst = max(worst, float(np.max(np.abs(np.sqrt(sx**2 + sy**2 + sz**2) - p.spin))) / p.spin)
    return _result("|S(t)| = S on the closed-form orbit", worst, 1e-9)


def check_analytic_vs_ode(p: ModelParams) -> CheckResult:
    worst = 0.0
    for k in CHECK_MODULI:
        sol = analytic.build_solution(p, k)
        period = sol.period
        traj = dynamics.integrate("reduced", analytic.spin_trajectory(sol, 0.0), p, period, period / 200, tol=1e-10)
        sx, _, _ = analytic.spin_components(sol, traj.times)
        worst = max(worst, float(np.max(np.abs(traj.column("sx") - sx))) / p.spin)
    return _result("closed-form Sx matches reduced ODE over one period", worst, 1e-6)


def check_battery_chain(p: ModelParams) -> CheckResult:
    worst = 0.0
    for k in CHECK_MODULI:
        sol = analytic.build_solution(p, k)
        t_c = battery.charging_time(sol)
        e_max = battery.max_energy(sol)
        t = np.linspace(0.0, 2.0 * t_c, 20001)
        e_b = np.asarray(battery.battery_energy(sol, t))
        _, _, sz = analytic.spin_components(sol, t + t_c)
        _, _, sz0 = analytic.spin_components(sol, t_c)
        from_spin = p.omega0 * (sz - sz0)
        integrated = cumulative_trapezoid(np.asarray(battery.charging_power(sol, t)), t, initial=0.0)
        worst = max(
            worst,
            float(np.max(np.abs(e_b - from_spin))) / e_max,
            float(np.max(np.abs(e_b - integrated))) / e_max,
        )
    return _result("E_B = omega0 dSz = integral of P", worst, 1e-6)


def check_battery_identities(p: ModelParams) -> CheckResult:
    worst = 0.0
    for k in CHECK_MODULI:
        sol = analytic.build_solution(p, k)
        e_max = battery.max_energy(sol)
        worst = max(
            worst,
            abs(float(battery.battery_energy(sol, 0.0))) / e_max,
            abs(float(battery.battery_energy(sol, battery.charging_time(sol))) - e_max) / e_max,
            max(0.0, e_max - 2.0 * p.omega0 * p.spin) / e_max,
        )
    return _result("E_B(0) = 0, E_B(t_c) = e_max <= 2 omega0 S", worst, 1e-9)


def run_checks(p: ModelParams, perturb_omega: float = 0.0) -> list[CheckResult]:
    """Run every check; a check that raises is reported as failed.

    Raises:
        InvalidParameterError: if ``p`` is not above the critical coupling.
    """
    lambda_c = critical_coupling(p)
    if not p.coupling > lambda_c:
        raise InvalidParameterError(
            f"validation needs lambda above lambda_c = {lambda_c!r} for the bound luminosity checks, got {p.coupling!r}"
        )

    checks: list[tuple[str, Callable[[], CheckResult]]] = [
        ("elliptic identities", check_elliptic_identities),
        ("quarter period", check_quarter_period),
        ("reciprocal modulus", check_reciprocal_modulus),
        ("fixed points", lambda: check_fixed_points(p)),
        ("omega residual", lambda: check_omega_residual(p, perturb_omega)),
        ("spin norm", lambda: check_spin_norm(p)),
        ("analytic vs ODE", lambda: check_analytic_vs_ode(p)),
        ("battery chain", lambda: check_battery_chain(p)),
        ("battery identities", lambda: check_battery_identities(p)),
    ]
    results = []
    for name, check in checks:
        try:
            result = check()
        except DickeBatteryError as e:
            result = CheckResult(name, False, math.nan, math.nan, str(e))
        log.debug(f"{result.name}: {'pass' if result.passed else 'FAIL'} ({result.value!r} vs {result.tolerance!r})")
        results.append(result)
    return results
