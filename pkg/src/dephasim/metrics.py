"""Distinguishability and mixedness functionals on qubit states.

Trace distance between two states, purity and linear entropy of a single
state, and the closed-form entropies of the two dephasing trajectories.
"""

from __future__ import annotations

import math

from .dynamics import InitState, QubitState, decoherence_factor, rho_product
from .kernels import EnvSpec


def trace_distance(rho1: QubitState, rho2: QubitState) -> float:
    """Trace distance: half the sum of |eigenvalues| of the difference.

    For 2x2 unit-trace states the difference is Hermitian and traceless
    with diagonal gap a and off-diagonal d, so the eigenvalues are
    +-sqrt(a^2 + |d|^2) and the distance is sqrt(a^2 + |d|^2), always in
    [0, 1].
    """
    gap = rho1.p_plus - rho2.p_plus
    delta = rho1.coherence - rho2.coherence
    return math.hypot(gap, abs(delta))


def purity(rho: QubitState) -> float:
    """Tr(rho^2) = p^2 + (1-p)^2 + 2|c|^2, in [1/2, 1] for a qubit."""
    return (rho.p_plus ** 2 + rho.p_minus ** 2
            + 2.0 * abs(rho.coherence) ** 2)


def linear_entropy(rho: QubitState) -> float:
    """Mixedness 1 - Tr(rho^2): zero for pure states, 1/2 at maximal mixing."""
    return 1.0 - purity(rho)


def _entropy_from_factor(init: InitState, factor_magnitude: float) -> float:
    """1 - [|b+|^4 + |b-|^4 + 2 |b+|^2 |b-|^2 |A|^2]."""
    p = abs(init.b_plus) ** 2
    q = abs(init.b_minus) ** 2
    return 1.0 - (p * p + q * q + 2.0 * p * q * factor_magnitude ** 2)


def entropy_correlated(env: EnvSpec, init: InitState, t: float) -> float:
    """Linear entropy of the correlated-state trajectory at time t."""
    factor = decoherence_factor(env, init, t)
    return _entropy_from_factor(init, abs(factor.value))


def entropy_product(env: EnvSpec, init: InitState, t: float) -> float:
    """Linear entropy of the product-state trajectory at time t."""
    rho = rho_product(env, init, t)
    scale = abs(init.b_plus) * abs(init.b_minus)
    return _entropy_from_factor(init, abs(rho.coherence) / scale)
