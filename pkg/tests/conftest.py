import pytest

from dephasim import EnvSpec, InitState


@pytest.fixture
def bench_env():
    """Benchmark environment used throughout the suite (omega_c = 1)."""
    return EnvSpec.from_dimensionless(alpha_dimless=0.01, mu=0.01,
                                      gamma_dimless=0.05, nu=0.2)


@pytest.fixture
def make_init():
    def _make(lam, p_plus=0.5, epsilon=1.0):
        return InitState.from_populations(p_plus, lam, epsilon)
    return _make
