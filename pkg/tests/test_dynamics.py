"""Reduced-dynamics tests: normalisation, decoherence factor, trajectories."""

import cmath
import math
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from dephasim import (EnvSpec, InitState, QubitState, decoherence_factor,
                      integrate_r, integrate_s, kernels_at, normalization_c,
                      rho_correlated, rho_product, trace_distance,
                      vacuum_overlap)

# sqrt(0.25 + 0.25 + 0.5 * exp(-0.025 * Gamma(0.2))): hand derivation
# with the oracle-certified overlap, frozen below and recomputed live in
# test_half_mixing_matches_overlap_formula.
C_HALF_BENCH = 0.9725148346914673


@st.composite
def env_specs(draw, max_coupling=0.5):
    mu = draw(st.one_of(st.floats(0.01, 2.5), st.floats(-0.9, -0.05)))
    nu = draw(st.floats(0.1, 2.0))
    if mu + nu <= 0.05:
        nu = 0.1 - mu
    alpha = draw(st.floats(0.0, max_coupling))
    gamma = draw(st.floats(0.0, max_coupling))
    omega_c = draw(st.sampled_from([0.5, 1.0, 2.0]))
    return EnvSpec(alpha=alpha, mu=mu, gamma=gamma, nu=nu, omega_c=omega_c)


class TestInitState:
    def test_norm_enforced(self):
        with pytest.raises(ValueError, match="b_plus"):
            InitState(b_plus=1.0, b_minus=1.0, lam=0.5)

    def test_zero_amplitude_rejected(self):
        with pytest.raises(ValueError, match="non-zero"):
            InitState(b_plus=1.0, b_minus=0.0, lam=0.5)

    @pytest.mark.parametrize("lam", [-0.1, 1.1])
    def test_lambda_range(self, lam):
        with pytest.raises(ValueError, match="lam"):
            InitState.from_populations(0.5, lam)

    @pytest.mark.parametrize("p", [0.0, 1.0, -0.2, 1.5])
    def test_population_strictly_inside_unit_interval(self, p):
        with pytest.raises(ValueError, match="p_plus"):
            InitState.from_populations(p, 0.5)

    def test_from_populations(self):
        init = InitState.from_populations(0.3, 0.7, epsilon=1.0)
        assert init.p_plus == pytest.approx(0.3, rel=1e-14)
        assert abs(init.b_plus)**2 + abs(init.b_minus)**2 == pytest.approx(1.0)


class TestQubitState:
    def test_positivity_enforced(self):
        with pytest.raises(ValueError, match="positivity"):
            QubitState(p_plus=0.5, coherence=0.6)

    def test_boundary_is_allowed(self):
        QubitState(p_plus=0.5, coherence=0.5)
        QubitState(p_plus=1.0, coherence=0.0)

    def test_population_range(self):
        with pytest.raises(ValueError, match="population"):
            QubitState(p_plus=1.2, coherence=0.0)


class TestNormalization:
    def test_endpoints_are_exactly_one(self, bench_env):
        assert normalization_c(bench_env, 0.0) == 1.0
        assert normalization_c(bench_env, 1.0) == 1.0

    def test_half_mixing_matches_overlap_formula(self, bench_env):
        overlap = math.exp(integrate_s(bench_env, 0.0))
        expected = math.sqrt(0.25 + 0.25 + 0.5 * overlap)
        assert normalization_c(bench_env, 0.5) == pytest.approx(expected,
                                                              rel=1e-10)
        assert normalization_c(bench_env, 0.5) == pytest.approx(C_HALF_BENCH,
                                                              rel=1e-12)

    def test_rejects_out_of_range(self, bench_env):
        with pytest.raises(ValueError):
            normalization_c(bench_env, 1.5)


class TestDecoherenceFactor:
    def test_uncorrelated_is_pure_phase_times_decay(self, bench_env, make_init):
        init = make_init(0.0)
        for t in (0.0, 0.7, 12.0):
            k = kernels_at(bench_env, t)
            expected = cmath.exp(complex(-k.r, -2.0 * init.epsilon * t))
            value = decoherence_factor(bench_env, init, t).value
            assert value == pytest.approx(expected, abs=1e-15)

    def test_initial_value_is_real_in_unit_interval(self, bench_env, make_init):
        for lam in (0.0, 0.3, 0.75, 1.0):
            a0 = decoherence_factor(bench_env, make_init(lam), 0.0).value
            assert a0.imag == 0.0
            assert 0.0 < a0.real <= 1.0

    def test_magnitude_identity(self, bench_env, make_init):
        # |A| C e^r == |1 - lam + lam e^(s - 2i phi)| row by row
        for lam in (0.25, 0.6, 1.0):
            init = make_init(lam)
            c_norm = normalization_c(bench_env, lam)
            for t in (0.05, 1.0, 30.0):
                k = kernels_at(bench_env, t)
                lhs = (abs(decoherence_factor(bench_env, init, t).value)
                       * c_norm * math.exp(k.r))
                rhs = abs((1 - lam) + lam * cmath.exp(complex(k.s,
                                                              -2.0 * k.phi)))
                assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_fully_correlated_magnitude_vs_oracle(self, bench_env, make_init):
        # |A_1(10)| = e^(-r(10) + s(10)) with r, s taken from the oracle
        r = integrate_r(bench_env, 10.0)
        s = integrate_s(bench_env, 10.0)
        value = decoherence_factor(bench_env, make_init(1.0), 10.0).value
        assert abs(value) == pytest.approx(math.exp(-r + s), rel=1e-8)

    @settings(max_examples=60, deadline=None)
    @given(env=env_specs(), lam=st.floats(0.0, 1.0),
           t=st.floats(0.0, 300.0))
    def test_magnitude_never_exceeds_one(self, env, lam, t):
        init = InitState.from_populations(0.5, lam, epsilon=1.0)
        value = decoherence_factor(env, init, t).value
        assert abs(value) <= 1.0 + 1e-12


class TestTrajectoriesAgree:
    def test_shared_start_is_exact(self, bench_env, make_init):
        for lam in (0.0, 0.4, 1.0):
            init = make_init(lam)
            corr = rho_correlated(bench_env, init, 0.0)
            prod = rho_product(bench_env, init, 0.0)
            assert corr.p_plus == prod.p_plus
            assert corr.coherence == prod.coherence

    def test_lambda_zero_collapse(self, bench_env, make_init):
        init = make_init(0.0)
        for t in (0.0, 0.3, 5.0, 120.0):
            corr = rho_correlated(bench_env, init, t)
            prod = rho_product(bench_env, init, t)
            assert trace_distance(corr, prod) <= 1e-14

    def test_product_coherence_is_constant_without_coupling(self, make_init):
        env = EnvSpec(alpha=0.0, mu=0.5, gamma=0.05, nu=0.2)
        init = make_init(0.75)
        mags = [abs(rho_product(env, init, t).coherence)
                for t in (0.0, 1.0, 50.0)]
        assert mags == pytest.approx([mags[0]] * 3, rel=1e-14)

    def test_product_magnitude_factorises(self, bench_env, make_init):
        # |coherence| = |b+ b-| A(0) e^(-r(5)) with r from the oracle
        init = make_init(0.75)
        a0 = decoherence_factor(bench_env, init, 0.0).value.real
        r5 = integrate_r(bench_env, 5.0)
        mag = abs(rho_product(bench_env, init, 5.0).coherence)
        assert mag == pytest.approx(0.5 * a0 * math.exp(-r5), rel=1e-8)

    def test_correlated_coherence_dominated_by_initial(self, bench_env,
                                                       make_init):
        init = make_init(1.0)
        state = rho_correlated(bench_env, init, 10.0)
        assert abs(state.coherence) <= abs(init.b_plus * init.b_minus)


@settings(max_examples=60, deadline=None)
@given(env=env_specs(), lam=st.floats(0.0, 1.0), t=st.floats(0.0, 100.0),
       phase_plus=st.floats(0.0, 2.0 * math.pi),
       phase_minus=st.floats(0.0, 2.0 * math.pi))
def test_amplitude_phases_do_not_move_the_distance(env, lam, t, phase_plus,
                                                   phase_minus):
    # D_T depends on b+- only through |b+ b-|, so arbitrary phases are
    # observationally irrelevant.
    plain = InitState.from_populations(0.4, lam, epsilon=1.0)
    rotated = replace(plain,
                      b_plus=plain.b_plus * cmath.exp(1j * phase_plus),
                      b_minus=plain.b_minus * cmath.exp(1j * phase_minus))
    d_plain = trace_distance(rho_correlated(env, plain, t),
                             rho_product(env, plain, t))
    d_rotated = trace_distance(rho_correlated(env, rotated, t),
                               rho_product(env, rotated, t))
    assert d_rotated == pytest.approx(d_plain, abs=1e-13)


def test_vacuum_overlap_feeds_normalization(bench_env):
    overlap = vacuum_overlap(bench_env)
    lam = 0.5
    direct = math.sqrt((1 - lam)**2 + lam**2 + 2 * lam * (1 - lam) * overlap)
    assert normalization_c(bench_env, lam) == pytest.approx(direct, rel=1e-15)
