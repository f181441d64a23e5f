"""CLI commands for dicke_battery."""

from __future__ import annotations

import functools
import sys
from collections.abc import Callable
from enum import Enum
from typing import Any, TypeVar

import click
import numpy as np

from . import __version__
from .analytic import (
    Branch,
    adiabatic_phase_state,
    build_solution,
    effective_potential,
    spin_components,
    spin_trajectory,
)
from .battery import ScalingMode, battery_curve, prepare_n_values, scaling_study
from .config import Config, load_config
from .constants import SUPPORTED_METHODS
from .dynamics import integrate, spin_to_canonical
from .errors import ConfigError, DickeBatteryError, InsufficientDataError, InvalidParameterError
from .logging_config import get_logger, log_run_parameters, setup_logging
from .model import ModelParams, Phase, classify_phase, critical_coupling
from .systems import EquationSystem, get_registry
from .utils import check_writable, format_float, render_csv, sweep_progress, write_csv, write_json, write_text
from .validation import CheckResult, run_checks

# Module logger
log = get_logger("cli")

F = TypeVar("F", bound=Callable[..., Any])
E = TypeVar("E", bound=Enum)


def handle_errors(func: F) -> F:
    """Map exceptions to exit codes: 1 for bad input, 2 for failed computations, 130 on Ctrl-C."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except KeyboardInterrupt:
            click.echo("\n\nOperation cancelled by user.", err=True)
            sys.exit(130)
        except DickeBatteryError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(e.exit_code)
        except Exception as e:
            click.echo(f"Unexpected error: {e}", err=True)
            sys.exit(2)

    return wrapper  # type: ignore[return-value]


def common_options(func: F) -> F:
    """--config, --out, --format and --tol, shared by every subcommand."""
    func = click.option("--tol", type=float, default=None, help="Integrator relative tolerance")(func)
    func = click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default=None, help="Output format")(
        func
    )
    func = click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout)")(
        func
    )
    func = click.option(
        "--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON config file"
    )(func)
    return func


def model_options(func: F) -> F:
    """Physics flags overriding the ``model`` config section."""
    func = click.option("--N", "n_tls", type=int, default=None, help="Number of two-level systems (even)")(func)
    func = click.option("--epsilon", type=float, default=None, help="Interaction type (-1 = Dicke)")(func)
    func = click.option("--lambda", "coupling", type=float, default=None, help="Coupling constant")(func)
    func = click.option("--omega0", type=float, default=None, help="Two-level splitting")(func)
    func = click.option("--omega", type=float, default=None, help="Cavity frequency")(func)
    return func


def build_config(config_path: str | None, model: dict[str, Any], **run: Any) -> Config:
    """Defaults < config file < command-line flags."""
    cfg = load_config(config_path)
    cfg.apply_overrides(
        "model",
        **{
            "omega": model.get("omega"),
            "omega0": model.get("omega0"),
            "lambda": model.get("coupling"),
            "epsilon": model.get("epsilon"),
            "N": model.get("n_tls"),
        },
    )
    cfg.apply_overrides("run", **run)
    ctx = click.get_current_context(silent=True)
    log_run_parameters(ctx.info_name if ctx is not None else "dicke-battery", cfg.as_dict())
    return cfg


def _split_model(kwargs: dict[str, Any]) -> dict[str, Any]:
    return {key: kwargs.pop(key) for key in ("omega", "omega0", "coupling", "epsilon", "n_tls")}


def _report(message: str, cfg: Config) -> None:
    """Human-readable summary; goes to stderr when data is streamed to stdout."""
    click.echo(message, err=cfg.out is None)


def _enum(cfg: Config, key: str, enum_cls: type[E]) -> E:
    value = cfg.get("run", key)
    try:
        return enum_cls(value)
    except ValueError as e:
        choices = ", ".join(str(m.value) for m in enum_cls)
        raise ConfigError(f"'{key}' must be one of {choices}, got {value!r}") from e


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise ConfigError(f"{what} must be a comma-separated list of numbers, got '{text}'") from e


@click.group(invoke_without_command=True)
@click.pass_context
@click.option("--version", "-v", is_flag=True, help="Show tool version")
@click.option("--verbose", "-V", is_flag=True, help="Enable verbose output")
@click.option("--quiet", "-q", is_flag=True, help="Suppress non-essential output")
def cli(ctx: click.Context, version: bool, verbose: bool, quiet: bool) -> None:
    """Extended Dicke model quantum battery - simulate, solve and scale"""
    setup_logging(verbose=verbose, quiet=quiet)

    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose

    if version:
        click.echo(f"dicke-battery v{__version__}")
        ctx.exit()

    if ctx.invoked_subcommand is None:
        click.echo(ctx.get_help())


def initial_state(system: EquationSystem, params: ModelParams, cfg: Config) -> Any:
    """Explicit state from the config, or the bound luminosity orbit at t = 0."""
    if cfg.get("run", "init") == "explicit":
        state = cfg.get("run", "state")
        if state is None:
            raise ConfigError("init 'explicit' needs a state (--state or run.state)")
        values = _parse_floats(state, "state") if isinstance(state, str) else cfg.number_list("run", "state")
        return system.unpack(np.asarray(values, dtype=float))

    if cfg.get("run", "init") != "bound-luminosity":
        raise ConfigError(f"init must be 'bound-luminosity' or 'explicit', got {cfg.get('run', 'init')!r}")
    if classify_phase(params) is not Phase.SUPERRADIANT:
        raise InvalidParameterError(
            f"bound-luminosity initial state needs lambda > lambda_c = {critical_coupling(params)!r}, "
            f"got lambda = {params.coupling!r}"
        )
    sol = build_solution(params, cfg.k, _enum(cfg, "branch", Branch))
    name = system.get_name()
    if name == "full":
        return adiabatic_phase_state(sol, 0.0)
    if name == "reduced":
        return spin_trajectory(sol, 0.0)
    if name == "qphi":
        return spin_to_canonical(spin_trajectory(sol, 0.0), params.spin)
    raise ConfigError(f"no bound-luminosity initial state for system '{name}'; use --init explicit")


@cli.command()
@common_options
@model_options
@click.option("--system", type=str, default=None, help="Equation system: full, reduced or qphi")
@click.option("--init", type=click.Choice(["bound-luminosity", "explicit"]), default=None, help="Initial condition")
@click.option("--state", type=str, default=None, help="Explicit initial state, comma-separated in column order")
@click.option("--k", type=float, default=None, help="Jacobi modulus of the bound-luminosity orbit")
@click.option("--branch", type=click.Choice(["plus", "minus"]), default=None, help="Sign of Sx on the orbit")
@click.option("--t-end", type=float, default=None, help="End time")
@click.option("--dt-out", type=float, default=None, help="Output sampling step")
@click.option("--method", type=click.Choice(list(SUPPORTED_METHODS)), default=None, help="Runge-Kutta scheme")
@handle_errors
def simulate(config_path: str | None, out: str | None, fmt: str | None, **kwargs: Any) -> None:
    """Integrate the equations of motion and write the trajectory."""
    model = _split_model(kwargs)
    cfg = build_config(config_path, model, out=out, format=fmt, **kwargs)
    params = ModelParams.from_dict(cfg.model)
    system = get_registry().require(str(cfg.get("run", "system")))
    system.validate(params)
    output_format = cfg.output_format
    check_writable(cfg.out)
    start = initial_state(system, params, cfg)

    traj = integrate(
        system,
        start,
        params,
        t_end=cfg.number("run", "t_end"),
        dt_out=cfg.number("run", "dt_out"),
        tol=cfg.tol,
        method=str(cfg.get("run", "method")),
    )
    if output_format == "csv":
        write_csv(traj.header, traj.rows(), cfg.out, cfg.as_dict())
    else:
        write_json(
            {"summary": traj.summary(), "columns": traj.header, "rows": [list(row) for row in traj.rows()]},
            cfg.out,
            cfg.as_dict(),
        )

    _report(
        f"{system.get_name()}: {len(traj)} samples, energy drift {format_float(traj.energy_drift())}, "
        f"spin-norm drift {format_float(traj.spin_norm_drift())}",
        cfg,
    )


@cli.command()
@common_options
@model_options
@click.option("--k", type=float, default=None, help="Jacobi modulus")
@click.option("--branch", type=click.Choice(["plus", "minus"]), default=None, help="Sign of Sx on the orbit")
@click.option("--periods", type=int, default=None, help="Orbit periods to compare against the ODE")
@click.option("--samples", type=int, default=None, help="Samples in the comparison")
@handle_errors
def analytic(config_path: str | None, out: str | None, fmt: str | None, **kwargs: Any) -> None:
    """Closed-form bound luminosity orbit, compared with the reduced ODE."""
    model = _split_model(kwargs)
    cfg = build_config(config_path, model, out=out, format=fmt, **kwargs)
    params = ModelParams.from_dict(cfg.model)
    output_format = cfg.output_format
    periods = int(cfg.number("run", "periods"))
    samples = int(cfg.number("run", "samples"))
    if periods < 1 or samples < 2:
        raise ConfigError("periods must be >= 1 and samples >= 2")
    check_writable(cfg.out)

    sol = build_solution(params, cfg.k, _enum(cfg, "branch", Branch))
    span = sol.period * periods if np.isfinite(sol.period) else cfg.number("run", "t_end")
    traj = integrate("reduced", spin_trajectory(sol, 0.0), params, span, span / (samples - 1), tol=cfg.tol)
    sx, sy, sz = spin_components(sol, traj.times)
    error = float(np.max(np.abs(traj.column("sx") - sx)))

    if output_format == "csv":
        rows = (
            (t, a_sx, a_sy, a_sz, n_sx, n_sy, n_sz)
            for t, a_sx, a_sy, a_sz, (n_sx, n_sy, n_sz) in zip(traj.times, sx, sy, sz, traj.values)
        )
        write_csv(("t", "sx", "sy", "sz", "sx_ode", "sy_ode", "sz_ode"), rows, cfg.out, cfg.as_dict())
    else:
        write_json({"solution": sol.summary(), "comparison": {"t_end": span, "max_abs_error_sx": error}}, cfg.out, cfg.as_dict())

    _report(f"Omega = {format_float(sol.omega_big)}, max |Sx - Sx_ode| = {format_float(error)}", cfg)


@cli.command()
@common_options
@model_options
@click.option("--k", "k_values", type=float, multiple=True, help="Jacobi modulus (repeatable)")
@click.option("--samples", type=int, default=None, help="Points on [-S, S]")
@handle_errors
def potential(config_path: str | None, out: str | None, fmt: str | None, **kwargs: Any) -> None:
    """Double-well potential U(Sx) and the level C for each k."""
    model = _split_model(kwargs)
    cfg = build_config(config_path, model, out=out, format=fmt, **kwargs)
    params = ModelParams.from_dict(cfg.model)
    output_format = cfg.output_format
    samples = int(cfg.number("run", "samples"))
    if samples < 3:
        raise ConfigError(f"samples must be >= 3, got {samples}")
    k_values = cfg.k_values
    check_writable(cfg.out)

    half = (samples - 1) // 2
    grid = params.spin * np.arange(-half, half + 1) / half
    curves: list[dict[str, Any]] = []
    errors: dict[str, str] = {}
    for k in k_values:
        try:
            sol = build_solution(params, k)
        except DickeBatteryError as e:
            log.warning(f"k = {k!r}: {e}")
            errors[repr(k)] = str(e)
            continue
        curves.append({"k": k, "C": sol.const_c, "sx": grid, "U": np.asarray(effective_potential(sol, grid))})

    if output_format == "csv":
        rows = ((c["k"], x, u, c["C"]) for c in curves for x, u in zip(c["sx"], c["U"]))
        text = render_csv(("k", "sx", "U", "C"), rows, cfg.as_dict())
        text += "".join(f"# error k={k}: {message}\n" for k, message in errors.items())
        write_text(text, cfg.out)
    else:
        payload = {
            "curves": [{"k": c["k"], "C": c["C"], "sx": c["sx"].tolist(), "U": c["U"].tolist()} for c in curves],
            "errors": errors,
        }
        write_json(payload, cfg.out, cfg.as_dict())

    if not curves:
        sys.exit(2)


@cli.command()
@common_options
@model_options
@click.option("--k", "k_values", type=float, multiple=True, help="Jacobi modulus (repeatable)")
@click.option("--samples", type=int, default=None, help="Samples per curve")
@handle_errors
def battery(config_path: str | None, out: str | None, fmt: str | None, **kwargs: Any) -> None:
    """Battery energy E_B(t) and power P(t) over one period for each k."""
    model = _split_model(kwargs)
    cfg = build_config(config_path, model, out=out, format=fmt, **kwargs)
    params = ModelParams.from_dict(cfg.model)
    output_format = cfg.output_format
    samples = int(cfg.number("run", "samples"))
    k_values = cfg.k_values
    check_writable(cfg.out)

    curves = []
    errors: dict[str, str] = {}
    for k in k_values:
        try:
            curves.append(battery_curve(build_solution(params, k), samples=samples))
        except DickeBatteryError as e:
            log.warning(f"k = {k!r}: {e}")
            errors[repr(k)] = str(e)

    if output_format == "csv":
        rows = ((curve.sol.k, *row) for curve in curves for row in curve.rows())
        text = render_csv(("k", "t", "E_B", "P"), rows, cfg.as_dict())
        text += "".join(f"# error k={k}: {message}\n" for k, message in errors.items())
        write_text(text, cfg.out)
    else:
        write_json({"curves": [curve.to_dict() for curve in curves], "errors": errors}, cfg.out, cfg.as_dict())

    for curve in curves:
        _report(f"k = {curve.sol.k!r}: t_c = {format_float(curve.t_c)}, e_max = {format_float(curve.e_max)}", cfg)
    if not curves:
        sys.exit(2)


@cli.command()
@common_options
@model_options
@click.option("--k", type=float, default=None, help="Jacobi modulus, fixed across N")
@click.option("--n-values", type=str, default=None, help="Comma-separated even N values")
@click.option("--mode", type=click.Choice([m.value for m in ScalingMode]), default=None, help="Sweep mode")
@click.option("--ratio", type=float, default=None, help="lambda / lambda_c in fixed-ratio mode")
@click.option("--workers", type=int, default=None, help="Worker threads")
@handle_errors
def scaling(config_path: str | None, out: str | None, fmt: str | None, n_values: str | None, **kwargs: Any) -> None:
    """Sweep N and fit power laws for charging power and charging time."""
    model = _split_model(kwargs)
    n_list = None
    if n_values is not None:
        parsed = _parse_floats(n_values, "n-values")
        n_list = [int(n) if float(n).is_integer() else n for n in parsed]
    cfg = build_config(config_path, model, out=out, format=fmt, n_values=n_list, **kwargs)
    params = ModelParams.from_dict(cfg.model)
    output_format = cfg.output_format
    mode = _enum(cfg, "mode", ScalingMode)
    grid = prepare_n_values(cfg.n_values)
    workers = int(cfg.number("run", "workers"))
    check_writable(cfg.out)

    try:
        with sweep_progress(len(grid), "Scaling sweep") as advance:
            report = scaling_study(
                params,
                grid,
                cfg.k,
                mode=mode,
                ratio=cfg.number("run", "ratio"),
                workers=workers,
                progress=advance,
            )
    except InsufficientDataError as e:
        for n, message in e.failures.items():
            click.echo(f"N = {n} failed: {message}", err=True)
        raise

    if output_format == "json":
        write_json(report.to_dict(), cfg.out, cfg.as_dict())
    else:
        rows = (
            (e.n_tls, e.coupling, e.omega_big, e.t_c, e.e_max, e.p_max, e.p_avg) for e in report.entries
        )
        write_csv(("N", "lambda", "Omega", "t_c", "e_max", "p_max", "p_avg"), rows, cfg.out, cfg.as_dict())

    for name, fit in report.fits.items():
        _report(f"{name}: exponent {fit.exponent:.4f}, r^2 {fit.r_squared:.6f}", cfg)
    for n, message in report.failures.items():
        _report(f"N = {n} failed: {message}", cfg)
    if not report.passes():
        _report("Fit quality below r^2 threshold", cfg)
        sys.exit(2)


def _check_report(results: list[CheckResult], all_passed: bool) -> list[tuple[str, str | None]]:
    """Lines of the [✓]/[✗] report, each paired with its terminal colour."""
    lines: list[tuple[str, str | None]] = [("Running dicke-battery self-checks...", "cyan"), ("-" * 40, None)]
    for r in results:
        if r.passed:
            lines.append((f" [✓] {r.name}: {r.value:.3e} <= {r.tolerance:.0e}", "green"))
        else:
            lines.append((f" [✗] {r.name}: {r.value:.3e} > {r.tolerance:.0e} {r.detail}".rstrip(), "red"))
    lines.append(("-" * 40, None))
    if all_passed:
        lines.append((" All checks passed.", "bright_cyan"))
    else:
        lines.append((" Some checks failed. See the red items above.", "yellow"))
    return lines


@cli.command()
@common_options
@model_options
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON")
@click.option("--perturb-omega", type=float, default=0.0, help="Add to Omega before the residual check (testing hook)")
@handle_errors
def validate(
    config_path: str | None, out: str | None, fmt: str | None, as_json: bool, perturb_omega: float, **kwargs: Any
) -> None:
    """Run the built-in consistency checks."""
    model = _split_model(kwargs)
    cfg = build_config(config_path, model, out=out, format=fmt, **kwargs)
    params = ModelParams.from_dict(cfg.model)
    as_json = as_json or fmt == "json"
    check_writable(cfg.out)

    results = run_checks(params, perturb_omega=perturb_omega)
    all_passed = all(r.passed for r in results)

    if as_json:
        write_json(
            {
                "passed": all_passed,
                "checks": [r.to_dict() for r in results],
                "failures": [r.name for r in results if not r.passed],
            },
            cfg.out,
            cfg.as_dict(),
        )
    else:
        lines = _check_report(results, all_passed)
        if cfg.out is None:
            for text, color in lines:
                click.secho(text, fg=color, bold=color in ("cyan", "bright_cyan"))
        else:
            write_text("".join(f"{text}\n" for text, _ in lines), cfg.out)
            _report(f"Report written to {cfg.out}", cfg)

    if not all_passed:
        sys.exit(2)


def main() -> None:
    """Main entry point for the script."""
    try:
        cli()
    except Exception as e:
        click.echo(f"\nUnexpected error: {e}", err=True)
        sys.exit(2)


if __name__ == "__main__":
    main()
