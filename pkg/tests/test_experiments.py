"""Trajectory tables, long-time limits, sweeps and extremum detection."""

import numpy as np
import pytest

from dephasim import (EnvSpec, SaturationError, SweepTable, detect_extremum,
                      distance_limit, geometric_time_grid, kernels_limit,
                      linear_time_grid, normalization_c, rho_correlated,
                      rho_product, saturation_time, sweep, trace_distance,
                      trajectory, vacuum_overlap)

LAMBDAS = (0.25, 0.5, 0.75, 1.0)
# |b+||b-| e^(-r_inf) lam (e^(s_inf) - e^(s0)) at the benchmark parameters,
# lam = 1; recomputed live in test_benchmark_value_frozen.
D_LIMIT_BENCH = 0.004162132691068662


class TestTimeGrids:
    def test_geometric_structure(self):
        grid = geometric_time_grid(t_max=10.0)
        assert grid[0] == 0.0
        assert grid[1] == pytest.approx(1e-2)
        assert np.allclose(np.diff(np.log(grid[1:])), np.log(1.05))
        assert grid[-1] <= 10.0

    def test_linear_structure(self):
        grid = linear_time_grid(5.0, 11)
        assert grid[0] == 0.0 and grid[-1] == 5.0 and len(grid) == 11

    def test_validation(self):
        with pytest.raises(ValueError):
            geometric_time_grid(t_max=1.0, t_min=2.0)
        with pytest.raises(ValueError):
            linear_time_grid(-1.0)


class TestTrajectory:
    def test_uncorrelated_distance_is_identically_zero(self, bench_env,
                                                       make_init):
        table = trajectory(bench_env, make_init(0.0), geometric_time_grid())
        assert np.max(table.trace_dist) <= 1e-14

    def test_benchmark_curves_grow_and_order_in_lambda(self, bench_env,
                                                     make_init):
        grid = geometric_time_grid(t_max=1e3)
        tables = {lam: trajectory(bench_env, make_init(lam), grid)
                  for lam in LAMBDAS}
        for lam, table in tables.items():
            table.validate()
            assert table.trace_dist[0] == 0.0
            assert (np.diff(table.trace_dist) > -1e-10).all(), \
                f"distance not non-decreasing at lam={lam}"
        for low, high in zip(LAMBDAS, LAMBDAS[1:]):
            assert (tables[low].trace_dist
                    <= tables[high].trace_dist + 1e-12).all()

    def test_entropy_gap_is_nonnegative_everywhere(self, bench_env, make_init):
        grid = geometric_time_grid(t_max=1e3)
        for lam in LAMBDAS:
            table = trajectory(bench_env, make_init(lam), grid)
            assert (table.entropy_prod - table.entropy_corr >= -1e-12).all()

    def test_rows_expose_kernels(self, bench_env, make_init):
        table = trajectory(bench_env, make_init(1.0), np.array([0.0, 1.0]))
        assert table.r[0] == 0.0 and table.phi[0] == 0.0
        assert table.s[0] == pytest.approx(np.log(vacuum_overlap(bench_env)))

    def test_grid_validation(self, bench_env, make_init):
        init = make_init(0.5)
        with pytest.raises(ValueError):
            trajectory(bench_env, init, np.array([1.0, 0.5]))
        with pytest.raises(ValueError):
            trajectory(bench_env, init, np.array([-1.0, 0.5]))
        with pytest.raises(ValueError):
            trajectory(bench_env, init, np.array([]))


class TestDistanceLimit:
    def test_uncorrelated_vanishes(self, bench_env, make_init):
        assert distance_limit(bench_env, make_init(0.0)) == 0.0

    def test_decoupled_vanishes(self, make_init):
        env = EnvSpec(alpha=0.0, mu=0.5, gamma=0.05, nu=0.2)
        assert distance_limit(env, make_init(1.0)) == 0.0

    def test_benchmark_value_frozen(self, bench_env, make_init):
        lim = kernels_limit(bench_env)
        s0 = np.log(vacuum_overlap(bench_env))
        expected = 0.5 * np.exp(-lim.r) * (np.exp(lim.s) - np.exp(s0))
        value = distance_limit(bench_env, make_init(1.0))
        assert value == pytest.approx(expected, rel=1e-14)
        assert value == pytest.approx(D_LIMIT_BENCH, rel=1e-12)

    def test_requires_superohmic(self, make_init):
        env = EnvSpec(alpha=0.05, mu=-0.5, gamma=0.3, nu=1.0)
        with pytest.raises(ValueError, match="super-ohmic"):
            distance_limit(env, make_init(1.0))

    def test_grows_with_correlation(self, bench_env, make_init):
        values = [distance_limit(bench_env, make_init(lam)) for lam in LAMBDAS]
        assert values == sorted(values)

    def test_matches_trajectory_at_1e4_within_one_permille(self, make_init):
        # Required bound: 1e-3 relative agreement between the analytic
        # limit and the trajectory at t = 1e4 for mu in {0.01, 0.2, 1}.
        # The trajectory approaches the limit as (omega_c t)^(-mu), so the
        # true deviations at t = 1e4 are ~21, ~0.14 and ~2.4e-3: slower
        # than this bound assumes at every listed exponent.
        init = make_init(1.0)
        deviations = {}
        for mu in (0.01, 0.2, 1.0):
            env = EnvSpec.from_dimensionless(0.01, mu, 0.05, 0.2)
            at_large_t = trace_distance(rho_correlated(env, init, 1e4),
                                        rho_product(env, init, 1e4))
            limit = distance_limit(env, init)
            deviations[mu] = abs(at_large_t - limit) / limit
        assert all(dev < 1e-3 for dev in deviations.values()), (
            f"relative deviation of D_T(1e4) from D_T(inf): {deviations} "
            f"(bound 1e-3)")


class TestSweeps:
    def test_alpha_sweep_is_bell_shaped(self, bench_env, make_init):
        table = sweep(bench_env, make_init(1.0), "alpha")
        table.validate()
        ext = detect_extremum(table)
        assert ext.kind == "max"
        peak = table.distance.max()
        assert table.distance[0] < 0.5 * peak
        assert table.distance[-1] < 1e-6

    def test_gamma_sweep_has_interior_maximum(self, bench_env, make_init):
        ext = detect_extremum(sweep(bench_env, make_init(1.0), "gamma"))
        assert ext.kind == "max"

    def test_mu_sweep_has_interior_minimum(self, bench_env, make_init):
        table = sweep(bench_env, make_init(1.0), "mu")
        ext = detect_extremum(table)
        assert ext.kind == "min"
        assert table.values[0] < ext.location < table.values[-1]

    def test_mu_sweep_keeps_dimensionless_coupling_fixed(self, make_init):
        env = EnvSpec(alpha=0.02, mu=0.5, gamma=0.1, nu=0.4, omega_c=2.0)
        init = make_init(1.0)
        table = sweep(env, init, "mu", grid=np.array([1.0, 2.0, 3.0]))
        for mu, value in zip(table.values, table.distance):
            alpha = env.alpha_dimless / env.omega_c**mu
            point_env = EnvSpec(alpha=alpha, mu=mu, gamma=env.gamma,
                                nu=env.nu, omega_c=env.omega_c)
            assert point_env.alpha_dimless == pytest.approx(env.alpha_dimless)
            assert value == pytest.approx(distance_limit(point_env, init))

    def test_raw_mode_sweeps_bare_values(self, make_init):
        env = EnvSpec(alpha=0.02, mu=0.5, gamma=0.1, nu=0.4, omega_c=2.0)
        init = make_init(1.0)
        grid = np.array([0.01, 0.02, 0.04])
        table = sweep(env, init, "alpha", grid=grid, dimensionless=False)
        for raw, value in zip(grid, table.distance):
            point_env = EnvSpec(alpha=raw, mu=0.5, gamma=0.1, nu=0.4,
                                omega_c=2.0)
            assert value == pytest.approx(distance_limit(point_env, init))

    def test_lambda_sweep_is_monotone_with_no_extremum(self, bench_env,
                                                       make_init):
        table = sweep(bench_env, make_init(1.0), "lambda")
        assert (np.diff(table.distance) >= -1e-15).all()
        assert detect_extremum(table).kind == "none"

    def test_fixed_metadata_excludes_swept_parameter(self, bench_env,
                                                     make_init):
        table = sweep(bench_env, make_init(0.5), "gamma",
                      grid=np.array([0.01, 0.05, 0.2]))
        assert "gamma_dimless" not in table.fixed
        assert table.fixed["alpha_dimless"] == pytest.approx(0.01)

    def test_validation(self, bench_env, make_init):
        init = make_init(1.0)
        with pytest.raises(ValueError, match="unknown sweep parameter"):
            sweep(bench_env, init, "epsilon")
        with pytest.raises(ValueError, match="strictly increasing"):
            sweep(bench_env, init, "alpha", grid=np.array([0.1, 0.1, 0.2]))


class TestDetectExtremum:
    @staticmethod
    def table(values):
        vals = np.asarray(values, dtype=float)
        return SweepTable("alpha", np.arange(len(vals), dtype=float), vals)

    def test_monotone_is_none(self):
        assert detect_extremum(self.table([0.0, 1.0, 2.0, 3.0])).kind == "none"

    def test_simple_peak(self):
        ext = detect_extremum(self.table([0.0, 5.0, 0.0]))
        assert (ext.kind, ext.location, ext.value) == ("max", 1.0, 5.0)

    def test_simple_dip(self):
        ext = detect_extremum(self.table([3.0, 1.0, 4.0]))
        assert (ext.kind, ext.location, ext.value) == ("min", 1.0, 1.0)

    def test_tie_breaks_toward_smaller_sweep_value(self):
        ext = detect_extremum(self.table([0.0, 5.0, 5.0, 0.0]))
        assert ext.location == 1.0

    def test_plateau_at_endpoint_is_not_interior(self):
        assert detect_extremum(self.table([5.0, 5.0, 0.0])).kind == "none"

    def test_needs_three_rows(self):
        with pytest.raises(ValueError):
            detect_extremum(self.table([1.0, 2.0]))


class TestSaturationTime:
    def test_uncorrelated_saturates_immediately(self, bench_env, make_init):
        assert saturation_time(bench_env, make_init(0.0), tol=1e-2) == 0.0

    def test_decoupled_saturates_immediately(self, make_init):
        env = EnvSpec(alpha=0.0, mu=0.5, gamma=0.05, nu=0.2)
        assert saturation_time(env, make_init(1.0), tol=1e-2) == 0.0

    def test_strongly_superohmic_settles(self, make_init):
        env = EnvSpec.from_dimensionless(0.01, 2.0, 0.05, 1.0)
        init = make_init(1.0)
        t_sat = saturation_time(env, init, tol=1e-2, horizon=1e4)
        assert 0.0 < t_sat < 1e3
        d_inf = distance_limit(env, init)
        for t in t_sat * 2.0 ** np.arange(6):
            d = trace_distance(rho_correlated(env, init, t),
                               rho_product(env, init, t))
            assert abs(d - d_inf) <= 1e-2 * d_inf

    def test_tightening_tol_delays_saturation(self, make_init):
        env = EnvSpec.from_dimensionless(0.01, 2.0, 0.05, 1.0)
        init = make_init(1.0)
        assert (saturation_time(env, init, tol=1e-3, horizon=1e4)
                >= saturation_time(env, init, tol=1e-2, horizon=1e4))

    def test_weakly_superohmic_reports_nonsaturation(self, bench_env,
                                                     make_init):
        # (omega_c t)^(-0.01) decay: no practical horizon reaches the limit
        with pytest.raises(SaturationError) as err:
            saturation_time(bench_env, make_init(1.0), tol=1e-2, horizon=1e5)
        assert err.value.last_deviation > 0.0
        assert err.value.horizon <= 1e5

    def test_validation(self, bench_env, make_init):
        with pytest.raises(ValueError):
            saturation_time(bench_env, make_init(1.0), tol=0.0)


def test_long_time_entropy_gap_grows_with_correlation(bench_env):
    # gap = 2 |b+|^2 |b-|^2 (|A(inf)|^2 - |A(0) A_0(inf)|^2), strictly
    # increasing across the benchmark lambda values
    lim = kernels_limit(bench_env)
    s0 = np.log(vacuum_overlap(bench_env))
    gaps = []
    for lam in LAMBDAS:
        c_norm = normalization_c(bench_env, lam)
        corr = np.exp(-lim.r) / c_norm * (1 - lam + lam * np.exp(lim.s))
        prod = np.exp(-lim.r) / c_norm * (1 - lam + lam * np.exp(s0))
        gaps.append(2.0 * 0.25 * (corr**2 - prod**2))
    assert all(b > a for a, b in zip(gaps, gaps[1:]))
