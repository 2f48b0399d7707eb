"""Command-line front end: trajectories, sweeps and oracle verification.

Emits small CSV tables (RFC-4180 style, no quoting, LF line endings,
numbers at full round-trip precision) plus a JSON run manifest per output
for reproducibility.  Identical invocations produce byte-identical files.

Exit codes: 0 success, 1 verification or validation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .dynamics import InitState
from .experiments import (DEFAULT_SWEEP_GRIDS, SweepTable, TrajectoryTable,
                          detect_extremum, geometric_time_grid,
                          linear_time_grid, sweep, trajectory)
from .kernels import EnvSpec
from .quadrature import QuadratureError
from .verify import (DEFAULT_ABS_FLOOR, DEFAULT_REL_TOL, default_grid,
                     run_verification)

OUTDIR_ENV_VAR = "DEPHASIM_OUTDIR"

_SWEEP_DEFAULTS = {
    # parameter: (min, max, points, spacing)
    "alpha": (1e-4, 10.0, 121, "log"),
    "gamma": (1e-3, 2.0, 121, "log"),
    "mu": (1.0, 3.9, 291, "linear"),
    "lambda": (0.0, 1.0, 101, "linear"),
}


def _fmt(x: float) -> str:
    """Serialise a float with 17 significant digits (round-trip exact)."""
    return format(float(x), ".17g")


def _add_physics_flags(p: argparse.ArgumentParser) -> None:
    dim = p.add_argument_group(
        "environment (dimensionless mode, omega_c = 1)")
    dim.add_argument("--alpha-dimless", type=float, default=None,
                     help="dimensionless coupling alpha * omega_c^mu "
                          "(default 0.01)")
    dim.add_argument("--gamma-dimless", type=float, default=None,
                     help="dimensionless amplitude gamma * omega_c^nu "
                          "(default 0.05)")
    raw = p.add_argument_group(
        "environment (raw mode; cannot be mixed with dimensionless flags)")
    raw.add_argument("--alpha", type=float, default=None,
                     help="raw coupling strength")
    raw.add_argument("--gamma", type=float, default=None,
                     help="raw coherent amplitude")
    raw.add_argument("--omega-c", type=float, default=None,
                     help="cutoff frequency (default 1)")
    p.add_argument("--mu", type=float, default=0.01,
                   help="ohmicity exponent (default 0.01)")
    p.add_argument("--nu", type=float, default=0.2,
                   help="coherent-profile exponent (default 0.2)")
    p.add_argument("--eps", type=float, default=1.0,
                   help="qubit energy splitting in units of omega_c "
                        "(default 1)")
    p.add_argument("--lambda", dest="lam", type=float, default=1.0,
                   help="initial correlation strength in [0, 1] (default 1)")
    p.add_argument("--p-plus", type=float, default=0.5,
                   help="excited-state population |b_plus|^2 (default 0.5)")


def _resolve_env(parser: argparse.ArgumentParser,
                 args: argparse.Namespace) -> EnvSpec:
    raw_given = any(v is not None
                    for v in (args.alpha, args.gamma, args.omega_c))
    dimless_given = any(v is not None
                        for v in (args.alpha_dimless, args.gamma_dimless))
    if raw_given and dimless_given:
        parser.error("use either the dimensionless flags "
                     "(--alpha-dimless/--gamma-dimless) or the raw flags "
                     "(--alpha/--gamma/--omega-c), not both")
    if raw_given:
        return EnvSpec(alpha=args.alpha if args.alpha is not None else 0.01,
                       mu=args.mu,
                       gamma=args.gamma if args.gamma is not None else 0.05,
                       nu=args.nu,
                       omega_c=(args.omega_c if args.omega_c is not None
                                else 1.0))
    return EnvSpec.from_dimensionless(
        alpha_dimless=(args.alpha_dimless if args.alpha_dimless is not None
                       else 0.01),
        mu=args.mu,
        gamma_dimless=(args.gamma_dimless if args.gamma_dimless is not None
                       else 0.05),
        nu=args.nu)


def _resolve_out(name: str) -> Path:
    """Bare file names land in $DEPHASIM_OUTDIR (or the cwd); paths with a
    directory component are used as given."""
    path = Path(name)
    if path.parent == Path(".") and not path.is_absolute():
        outdir = os.environ.get(OUTDIR_ENV_VAR)
        if outdir:
            path = Path(outdir) / path
    return path


def _env_config(env: EnvSpec, init: InitState) -> dict:
    return {
        "alpha": env.alpha, "mu": env.mu, "gamma": env.gamma, "nu": env.nu,
        "omega_c": env.omega_c, "alpha_dimless": env.alpha_dimless,
        "gamma_dimless": env.gamma_dimless, "lambda": init.lam,
        "p_plus": init.p_plus, "epsilon": init.epsilon,
    }


def _write_outputs(path: Path, csv_text: str, subcommand: str,
                   config: dict, n_rows: int) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    data = csv_text.encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(data)
    manifest = {
        "tool": "dephasim",
        "version": __version__,
        "subcommand": subcommand,
        "config": config,
        "outputs": {
            "csv": path.name,
            "sha256": hashlib.sha256(data).hexdigest(),
            "rows": n_rows,
        },
    }
    manifest_path = path.with_name(path.stem + ".manifest.json")
    with open(manifest_path, "wb") as fh:
        fh.write((json.dumps(manifest, indent=2, sort_keys=True) + "\n")
                 .encode("utf-8"))
    return manifest_path


def _trajectory_csv(table: TrajectoryTable) -> str:
    lines = ["t,D_T,S_L_corr,S_L_prod,r,s,phi,absA_corr,absA_prod"]
    for i in range(len(table)):
        lines.append(",".join(_fmt(col[i]) for col in (
            table.t, table.trace_dist, table.entropy_corr,
            table.entropy_prod, table.r, table.s, table.phi,
            table.abs_factor_corr, table.abs_factor_prod)))
    return "\n".join(lines) + "\n"


def _sweep_csv(table: SweepTable) -> str:
    lines = ["sweep_param,value,D_T_inf"]
    for v, d in zip(table.values, table.distance):
        lines.append(f"{table.parameter},{_fmt(v)},{_fmt(d)}")
    ext = detect_extremum(table)
    if ext.kind == "none":
        lines.append("# extremum: none")
    else:
        lines.append(f"# extremum: {ext.kind} at {_fmt(ext.location)}")
    return "\n".join(lines) + "\n"


def cmd_trajectory(parser: argparse.ArgumentParser,
                   args: argparse.Namespace) -> int:
    env = _resolve_env(parser, args)
    init = InitState.from_populations(args.p_plus, args.lam, args.eps)
    if args.grid == "geom":
        grid = geometric_time_grid(t_max=args.t_max, t_min=args.t_min,
                                   ratio=args.ratio)
        grid_cfg = {"kind": "geometric", "t_min": args.t_min,
                    "t_max": args.t_max, "ratio": args.ratio}
    else:
        grid = linear_time_grid(t_max=args.t_max, n=args.t_points)
        grid_cfg = {"kind": "linear", "t_max": args.t_max,
                    "points": args.t_points}
    table = trajectory(env, init, grid)
    table.validate()
    path = _resolve_out(args.out)
    config = _env_config(env, init) | {"grid": grid_cfg}
    _write_outputs(path, _trajectory_csv(table), "trajectory", config,
                   len(table))
    print(path)
    return 0


def cmd_sweep(parser: argparse.ArgumentParser,
              args: argparse.Namespace) -> int:
    if not math.isinf(args.at_time):
        parser.error("--at-time currently supports only 'inf' "
                     "(the analytic long-time limit)")
    env = _resolve_env(parser, args)
    init = InitState.from_populations(args.p_plus, args.lam, args.eps)
    lo, hi, n, spacing = _SWEEP_DEFAULTS[args.param]
    lo = args.min if args.min is not None else lo
    hi = args.max if args.max is not None else hi
    n = args.points if args.points is not None else n
    spacing = args.spacing if args.spacing is not None else spacing
    if not hi > lo:
        parser.error(f"--max must exceed --min (got {lo} .. {hi})")
    if n < 3:
        parser.error("--points must be at least 3")
    grid = (np.geomspace(lo, hi, n) if spacing == "log"
            else np.linspace(lo, hi, n))
    table = sweep(env, init, args.param, grid, dimensionless=not args.raw)
    table.validate()
    path = _resolve_out(args.out if args.out is not None
                        else f"sweep_{args.param}.csv")
    config = _env_config(env, init) | {
        "param": args.param, "min": lo, "max": hi, "points": n,
        "spacing": spacing, "raw": args.raw, "at_time": "inf"}
    _write_outputs(path, _sweep_csv(table), "sweep", config, len(table))
    print(path)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    points = default_grid()
    extra = 0
    if any(v is not None for v in (args.mu, args.nu, args.alpha_dimless,
                                   args.gamma_dimless, args.t)):
        env = EnvSpec.from_dimensionless(
            alpha_dimless=(args.alpha_dimless
                           if args.alpha_dimless is not None else 0.01),
            mu=args.mu if args.mu is not None else 0.01,
            gamma_dimless=(args.gamma_dimless
                           if args.gamma_dimless is not None else 0.05),
            nu=args.nu if args.nu is not None else 1.0)
        points.append((env, args.t if args.t is not None else 10.0))
        extra = 1
    report = run_verification(points, rel_tol=args.rel_tol,
                              abs_floor=args.abs_floor)
    n = report.n_points
    print(f"closed-form vs quadrature oracle: {n - extra} grid points"
          + (f" + {extra} user point" if extra else "") + ", 3 kernels each")
    print(f"{'kernel':<8}{'worst rel err':<16}{'worst abs err':<16}at")
    for kernel in ("r", "s", "phi"):
        c = report.worst(kernel)
        where = (f"mu={c.env.mu:g} nu={c.env.nu:g} alpha={c.env.alpha:g} "
                 f"gamma={c.env.gamma:g} omega_c={c.env.omega_c:g} t={c.t:g}")
        print(f"{kernel:<8}{c.rel_err:<16.3e}{c.abs_err:<16.3e}{where}")
    print(f"tolerance: rel {args.rel_tol:g}, abs floor {args.abs_floor:g}")
    if report.all_ok:
        print("PASS")
        return 0
    bad = max(report.failures, key=lambda c: c.rel_err)
    print(f"FAIL: {len(report.failures)} of {3 * n} checks out of tolerance; "
          f"worst offender: kernel {bad.kernel} at mu={bad.env.mu:g} "
          f"nu={bad.env.nu:g} t={bad.t:g}: closed {bad.closed!r} vs "
          f"oracle {bad.oracle!r} (rel err {bad.rel_err:.3e})")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dephasim",
        description="Exact qubit pure-dephasing dynamics with and without "
                    "initial qubit-environment correlations")
    parser.add_argument("--version", action="version",
                        version=f"dephasim {__version__}")
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p_traj = subs.add_parser(
        "trajectory",
        help="time evolution of the trace distance and linear entropies")
    _add_physics_flags(p_traj)
    p_traj.add_argument("--grid", choices=("geom", "linear"), default="geom",
                        help="time-grid spacing (default geom)")
    p_traj.add_argument("--t-min", type=float, default=1e-2,
                        help="first non-zero time of the geometric grid "
                             "(default 0.01)")
    p_traj.add_argument("--t-max", type=float, default=1e3,
                        help="last time (default 1000)")
    p_traj.add_argument("--ratio", type=float, default=1.05,
                        help="geometric grid ratio (default 1.05)")
    p_traj.add_argument("--t-points", type=int, default=501,
                        help="number of points of the linear grid "
                             "(default 501)")
    p_traj.add_argument("--out", default="trajectory.csv",
                        help="output CSV path (default trajectory.csv; bare "
                             f"names honour ${OUTDIR_ENV_VAR})")

    p_sweep = subs.add_parser(
        "sweep",
        help="long-time trace distance over one swept parameter")
    _add_physics_flags(p_sweep)
    p_sweep.add_argument("--param", required=True,
                         choices=sorted(DEFAULT_SWEEP_GRIDS),
                         help="parameter to sweep")
    p_sweep.add_argument("--min", type=float, default=None,
                         help="sweep lower bound (per-parameter default)")
    p_sweep.add_argument("--max", type=float, default=None,
                         help="sweep upper bound (per-parameter default)")
    p_sweep.add_argument("--points", type=int, default=None,
                         help="number of grid points (per-parameter default)")
    p_sweep.add_argument("--spacing", choices=("log", "linear"), default=None,
                         help="grid spacing (per-parameter default)")
    p_sweep.add_argument("--raw", action="store_true",
                         help="sweep raw alpha/gamma instead of the "
                              "dimensionless products")
    p_sweep.add_argument("--at-time", type=float, default=math.inf,
                         help="evaluation time; only 'inf' (the analytic "
                              "limit) is supported")
    p_sweep.add_argument("--out", default=None,
                         help="output CSV path (default sweep_<param>.csv)")

    p_verify = subs.add_parser(
        "verify",
        help="certify the closed-form kernels against the quadrature oracle")
    p_verify.add_argument("--rel-tol", type=float, default=DEFAULT_REL_TOL,
                          help="relative agreement tolerance (default 1e-8)")
    p_verify.add_argument("--abs-floor", type=float,
                          default=DEFAULT_ABS_FLOOR,
                          help="absolute floor for tiny values "
                               "(default 1e-12)")
    point = p_verify.add_argument_group(
        "optional extra point (appended to the built-in grid; "
        "defaults: alpha-dimless 0.01, gamma-dimless 0.05, nu 1, t 10)")
    point.add_argument("--mu", type=float, default=None)
    point.add_argument("--nu", type=float, default=None)
    point.add_argument("--alpha-dimless", type=float, default=None)
    point.add_argument("--gamma-dimless", type=float, default=None)
    point.add_argument("--t", type=float, default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.subcommand == "trajectory":
            return cmd_trajectory(parser, args)
        if args.subcommand == "sweep":
            return cmd_sweep(parser, args)
        return cmd_verify(args)
    except (ValueError, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: output failed: {exc}", file=sys.stderr)
        return 1


def app() -> None:
    """Console-script entry point."""
    raise SystemExit(main())
