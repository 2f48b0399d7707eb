"""Trajectory tables and long-time parameter sweeps.

Builds the time evolution of the trace distance and linear entropies for
the two trajectories, the analytic long-time distance, and sweeps of that
limit over the coupling, the coherent amplitude, the ohmicity exponent and
the correlation strength, with interior-extremum detection.

Grid points are independent; results are assembled in grid order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .dynamics import InitState, normalization_c, rho_correlated, rho_product
from .kernels import EnvSpec, kernels_at, kernels_limit
from .metrics import linear_entropy, trace_distance

_SLACK = 1e-12

#: Default sweep grids per parameter.  The ohmicity window [1, 3.9] brackets
#: the shallow interior minimum of the long-time distance near mu ~ 3.1
#: (at fixed dimensionless coupling); wider windows put the global extremes
#: on the endpoints and hide it.
DEFAULT_SWEEP_GRIDS = {
    "alpha": np.geomspace(1e-4, 10.0, 121),
    "gamma": np.geomspace(1e-3, 2.0, 121),
    "mu": np.linspace(1.0, 3.9, 291),
    "lambda": np.linspace(0.0, 1.0, 101),
}


def geometric_time_grid(t_max: float = 1e3, t_min: float = 1e-2,
                        ratio: float = 1.05,
                        include_zero: bool = True) -> np.ndarray:
    """Geometrically spaced times: the dynamics spans decades.

    Starts at t_min and multiplies by ratio until t_max is passed; t = 0 is
    prepended by default so tables expose the shared initial state.
    """
    if not (t_max > t_min > 0.0 and ratio > 1.0):
        raise ValueError("need t_max > t_min > 0 and ratio > 1")
    ts = []
    t = t_min
    while t <= t_max * (1.0 + 1e-12):
        ts.append(t)
        t *= ratio
    if include_zero:
        ts.insert(0, 0.0)
    return np.asarray(ts)


def linear_time_grid(t_max: float, n: int = 501) -> np.ndarray:
    """Uniformly spaced times from 0 to t_max."""
    if not (t_max > 0.0 and n >= 2):
        raise ValueError("need t_max > 0 and n >= 2")
    return np.linspace(0.0, t_max, n)


@dataclass
class TrajectoryTable:
    """Per-time distances, entropies and kernel values for one run."""

    t: np.ndarray
    trace_dist: np.ndarray
    entropy_corr: np.ndarray
    entropy_prod: np.ndarray
    r: np.ndarray
    s: np.ndarray
    phi: np.ndarray
    abs_factor_corr: np.ndarray
    abs_factor_prod: np.ndarray

    def __len__(self) -> int:
        return len(self.t)

    def validate(self) -> None:
        """Re-check the physical invariants of every row."""
        if not (np.diff(self.t) > 0.0).all():
            raise ValueError("time grid must be strictly increasing")
        if ((self.trace_dist < 0.0) | (self.trace_dist > 1.0 + _SLACK)).any():
            raise ValueError("trace distance left [0, 1]")
        for name, col in (("correlated", self.entropy_corr),
                          ("product", self.entropy_prod)):
            if ((col < -_SLACK) | (col > 0.5 + _SLACK)).any():
                raise ValueError(f"linear entropy ({name}) left [0, 1/2]")
        for name, col in (("correlated", self.abs_factor_corr),
                          ("product", self.abs_factor_prod)):
            if (col > 1.0 + _SLACK).any():
                raise ValueError(f"|decoherence factor| ({name}) exceeded 1")


@dataclass
class SweepTable:
    """Long-time trace distance over one swept parameter."""

    parameter: str
    values: np.ndarray
    distance: np.ndarray
    fixed: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.values)

    def validate(self) -> None:
        if not (np.diff(self.values) > 0.0).all():
            raise ValueError("sweep values must be strictly increasing")
        if ((self.distance < 0.0) | (self.distance > 1.0 + _SLACK)).any():
            raise ValueError("long-time distance left [0, 1]")


def trajectory(env: EnvSpec, init: InitState,
               t_grid: np.ndarray) -> TrajectoryTable:
    """Evaluate both trajectories and their distance over a time grid.

    Every row records D_T(t) between the correlated and product states,
    both linear entropies, the kernel triple and both decoherence-factor
    magnitudes.  When the grid starts at 0 the first distance is exactly 0
    (the two reduced initial states coincide).
    """
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or len(ts) == 0:
        raise ValueError("t_grid must be a non-empty 1-d array")
    if ts[0] < 0.0 or (np.diff(ts) <= 0.0).any():
        raise ValueError("t_grid must be sorted, strictly increasing, with "
                         "t_grid[0] >= 0")
    scale = abs(init.b_plus) * abs(init.b_minus)
    cols = {name: np.empty(len(ts)) for name in
            ("trace_dist", "entropy_corr", "entropy_prod", "r", "s", "phi",
             "abs_factor_corr", "abs_factor_prod")}
    for i, t in enumerate(ts):
        k = kernels_at(env, t)
        corr = rho_correlated(env, init, t)
        prod = rho_product(env, init, t)
        cols["trace_dist"][i] = trace_distance(corr, prod)
        cols["entropy_corr"][i] = linear_entropy(corr)
        cols["entropy_prod"][i] = linear_entropy(prod)
        cols["r"][i], cols["s"][i], cols["phi"][i] = k.r, k.s, k.phi
        cols["abs_factor_corr"][i] = abs(corr.coherence) / scale
        cols["abs_factor_prod"][i] = abs(prod.coherence) / scale
    return TrajectoryTable(t=ts, **cols)


def distance_limit(env: EnvSpec, init: InitState) -> float:
    """Analytic long-time trace distance between the two trajectories.

    Substituting the kernel limits (phi -> 0, so the phases cancel) gives
    |b+||b-| exp(-r_inf) C^-1 lam (exp(s_inf) - exp(s(0))).  Requires a
    super-ohmic exponent mu > 0.
    """
    lim = kernels_limit(env)
    s_zero = kernels_at(env, 0.0).s
    c_norm = normalization_c(env, init.lam)
    return (abs(init.b_plus) * abs(init.b_minus) * math.exp(-lim.r) / c_norm
            * init.lam * (math.exp(lim.s) - math.exp(s_zero)))


def sweep(env: EnvSpec, init: InitState, parameter: str,
          grid: np.ndarray | None = None,
          dimensionless: bool = True) -> SweepTable:
    """Long-time distance as a function of one swept parameter.

    parameter is one of "alpha", "gamma", "mu" or "lambda".  For alpha and
    gamma the swept values are the dimensionless products (raw values when
    dimensionless is false); for mu, alpha is re-derived at every grid
    point so the dimensionless coupling alpha * omega_c**mu stays at its
    configured value (held raw instead when dimensionless is false).
    """
    if parameter not in DEFAULT_SWEEP_GRIDS:
        raise ValueError(f"unknown sweep parameter {parameter!r}; expected "
                         f"one of {sorted(DEFAULT_SWEEP_GRIDS)}")
    values = np.asarray(DEFAULT_SWEEP_GRIDS[parameter] if grid is None
                        else grid, dtype=float)
    if values.ndim != 1 or len(values) < 1:
        raise ValueError("sweep grid must be a non-empty 1-d array")
    if (np.diff(values) <= 0.0).any():
        raise ValueError("sweep grid must be strictly increasing")

    def point(v: float) -> float:
        if parameter == "alpha":
            alpha = v / env.omega_c**env.mu if dimensionless else v
            return distance_limit(replace(env, alpha=alpha), init)
        if parameter == "gamma":
            gamma = v / env.omega_c**env.nu if dimensionless else v
            return distance_limit(replace(env, gamma=gamma), init)
        if parameter == "mu":
            alpha = (env.alpha_dimless / env.omega_c**v if dimensionless
                     else env.alpha)
            return distance_limit(replace(env, alpha=alpha, mu=v), init)
        return distance_limit(env, replace(init, lam=v))

    distance = np.array([point(v) for v in values])
    fixed = {"alpha_dimless": env.alpha_dimless, "mu": env.mu,
             "gamma_dimless": env.gamma_dimless, "nu": env.nu,
             "omega_c": env.omega_c, "lambda": init.lam,
             "p_plus": init.p_plus, "epsilon": init.epsilon}
    fixed.pop({"alpha": "alpha_dimless", "gamma": "gamma_dimless",
               "mu": "mu", "lambda": "lambda"}[parameter])
    return SweepTable(parameter=parameter, values=values, distance=distance,
                      fixed=fixed)


@dataclass(frozen=True)
class Extremum:
    """Interior extremum of a sweep table (kind is "max", "min" or "none")."""

    kind: str
    location: float | None = None
    value: float | None = None


def detect_extremum(table: SweepTable) -> Extremum:
    """Report the strict interior extremum of a sweep, if one exists.

    The table's largest value qualifies when it sits strictly inside the
    grid and strictly above both endpoint values; otherwise the smallest
    value is tested the same way.  Ties break toward the smallest sweep
    value.  Monotone tables yield "none".
    """
    if len(table) < 3:
        raise ValueError("extremum detection needs at least 3 rows")
    d = table.distance
    i_max = int(np.argmax(d))
    if 0 < i_max < len(d) - 1 and d[i_max] > d[0] and d[i_max] > d[-1]:
        return Extremum("max", float(table.values[i_max]), float(d[i_max]))
    i_min = int(np.argmin(d))
    if 0 < i_min < len(d) - 1 and d[i_min] < d[0] and d[i_min] < d[-1]:
        return Extremum("min", float(table.values[i_min]), float(d[i_min]))
    return Extremum("none")


class SaturationError(RuntimeError):
    """The distance did not settle onto its limit below the horizon."""

    def __init__(self, message: str, horizon: float, last_deviation: float):
        super().__init__(message)
        self.horizon = horizon
        self.last_deviation = last_deviation


def saturation_time(env: EnvSpec, init: InitState, tol: float,
                    horizon: float = 1e6, t_start: float = 1e-2) -> float:
    """Smallest doubling-grid time after which D_T stays within tol of its limit.

    Searches the geometric grid t_start * 2**k up to horizon and returns
    the first grid point T such that |D_T(t) - D_T(inf)| <= tol * D_T(inf)
    for every sampled t >= T.  A vanishing limit (lam = 0 or alpha = 0)
    saturates from the start by convention.  Raises SaturationError when
    the last sampled point still deviates; for weakly super-ohmic
    environments (mu << 1) the (omega_c t)**(-mu) approach makes this the
    expected outcome at any practical horizon.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be > 0, got {tol}")
    if not horizon > t_start > 0.0:
        raise ValueError("need horizon > t_start > 0")
    d_inf = distance_limit(env, init)
    if d_inf == 0.0:
        return 0.0
    ts = t_start * 2.0 ** np.arange(math.ceil(math.log2(horizon / t_start)) + 1)
    ts = ts[ts <= horizon]
    deviations = np.array([
        abs(trace_distance(rho_correlated(env, init, t),
                           rho_product(env, init, t)) - d_inf)
        for t in ts])
    ok = deviations <= tol * d_inf
    if not ok[-1]:
        raise SaturationError(
            f"distance still {deviations[-1] / d_inf:.3g} (relative) away "
            f"from its limit at the horizon t = {ts[-1]:g}",
            horizon=float(ts[-1]), last_deviation=float(deviations[-1]))
    first_bad = np.nonzero(~ok)[0]
    return float(ts[0] if len(first_bad) == 0 else ts[first_bad[-1] + 1])
