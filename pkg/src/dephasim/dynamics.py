"""Reduced qubit dynamics under pure dephasing.

Two trajectories are built from the same dephasing kernels: the evolution
of an initially correlated qubit-environment state, and the evolution of
the corresponding uncorrelated product state sharing the same reduced
qubit state at t = 0.  Populations are constant; all dynamics lives in the
coherence, which is multiplied by a complex decoherence factor.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace

from .kernels import EnvSpec, kernels_at, vacuum_overlap

_NORM_TOL = 1e-9
_POSITIVITY_SLACK = 1e-12


@dataclass(frozen=True)
class InitState:
    """Initial qubit amplitudes and the correlation strength.

    Attributes
    ----------
    b_plus, b_minus : complex
        Amplitudes on the excited and ground state; both non-zero, with
        |b_plus|^2 + |b_minus|^2 = 1.
    lam : float
        Correlation strength in [0, 1]: 0 gives an uncorrelated start,
        1 the most correlated state of the family.
    epsilon : float
        Qubit energy splitting in units of omega_c.
    """

    b_plus: complex
    b_minus: complex
    lam: float
    epsilon: float = 0.0

    def __post_init__(self):
        norm = abs(self.b_plus) ** 2 + abs(self.b_minus) ** 2
        if abs(norm - 1.0) > _NORM_TOL:
            raise ValueError(
                f"amplitudes must satisfy |b_plus|^2 + |b_minus|^2 = 1, "
                f"got {norm}")
        if self.b_plus == 0 or self.b_minus == 0:
            raise ValueError("both amplitudes must be non-zero")
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError(
                f"correlation strength lam must lie in [0, 1], got {self.lam}")

    @classmethod
    def from_populations(cls, p_plus: float, lam: float,
                         epsilon: float = 0.0) -> "InitState":
        """Real positive amplitudes with excited-state population p_plus.

        The trace distance and entropies depend on the amplitudes only
        through |b_plus b_minus|, so fixing the phases to zero loses no
        generality (asserted as a property test).
        """
        if not 0.0 < p_plus < 1.0:
            raise ValueError(
                f"population p_plus must lie strictly inside (0, 1), "
                f"got {p_plus}")
        return cls(b_plus=complex(math.sqrt(p_plus)),
                   b_minus=complex(math.sqrt(1.0 - p_plus)),
                   lam=lam, epsilon=epsilon)

    @property
    def p_plus(self) -> float:
        return abs(self.b_plus) ** 2


@dataclass(frozen=True)
class QubitState:
    """2x2 density matrix with unit trace: populations plus one coherence.

    p_plus is the excited-state population; coherence is the off-diagonal
    element in row |1>, column |-1>.  Positivity |c|^2 <= p (1 - p) is
    enforced at construction (with 1e-12 slack for float drift).
    """

    p_plus: float
    coherence: complex

    def __post_init__(self):
        if not 0.0 <= self.p_plus <= 1.0:
            raise ValueError(
                f"population must lie in [0, 1], got {self.p_plus}")
        limit = self.p_plus * (1.0 - self.p_plus)
        if abs(self.coherence) ** 2 > limit + _POSITIVITY_SLACK:
            raise ValueError(
                f"positivity violated: |coherence|^2 = "
                f"{abs(self.coherence)**2} exceeds p(1-p) = {limit}")

    @property
    def p_minus(self) -> float:
        return 1.0 - self.p_plus


@dataclass(frozen=True)
class DecoherenceFactor:
    """Complex coherence multiplier at one time, with its lam and t.

    It is an overlap of unit vectors, so its magnitude never exceeds one.
    """

    value: complex
    lam: float
    t: float

    def __post_init__(self):
        if abs(self.value) > 1.0 + _POSITIVITY_SLACK:
            raise ValueError(
                f"decoherence factor magnitude {abs(self.value)} exceeds 1")


def normalization_c(env: EnvSpec, lam: float) -> float:
    """Normalisation constant of the correlated initial state.

    C^2 = (1 - lam)^2 + lam^2 + 2 lam (1 - lam) <vac|coherent>, with the
    overlap real and positive here, so C > 0 always.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lam must lie in [0, 1], got {lam}")
    overlap = vacuum_overlap(env)
    return math.sqrt((1.0 - lam) ** 2 + lam ** 2
                     + 2.0 * lam * (1.0 - lam) * overlap)


def decoherence_factor(env: EnvSpec, init: InitState, t: float) -> DecoherenceFactor:
    """Coherence multiplier of the correlated-state evolution.

    A(t) = C^-1 exp(-2i eps t - r(t)) [1 - lam + lam exp(-2i phi(t) + s(t))].
    With lam = 0 this reduces to the product-state factor
    exp(-2i eps t - r(t)).
    """
    k = kernels_at(env, t)
    c_norm = normalization_c(env, init.lam)
    bracket = (1.0 - init.lam) + init.lam * cmath.exp(complex(k.s, -2.0 * k.phi))
    value = cmath.exp(complex(-k.r, -2.0 * init.epsilon * t)) * bracket / c_norm
    return DecoherenceFactor(value=value, lam=init.lam, t=t)


def rho_correlated(env: EnvSpec, init: InitState, t: float) -> QubitState:
    """Reduced qubit state evolved from the correlated initial state."""
    factor = decoherence_factor(env, init, t)
    return QubitState(
        p_plus=init.p_plus,
        coherence=init.b_plus * init.b_minus.conjugate() * factor.value)


def rho_product(env: EnvSpec, init: InitState, t: float) -> QubitState:
    """Reduced qubit state evolved from the matching product initial state.

    The product state shares the reduced qubit state at t = 0, so its
    coherence carries A(0) A_0(t), where A_0 is the lam = 0 factor.
    """
    factor_zero = decoherence_factor(env, init, 0.0)
    factor_free = decoherence_factor(env, replace(init, lam=0.0), t)
    return QubitState(
        p_plus=init.p_plus,
        coherence=(init.b_plus * init.b_minus.conjugate()
                   * factor_zero.value * factor_free.value))
