"""Closed-form dephasing kernels for a power-law bosonic environment.

The environment is characterised by a spectral density of the form
``alpha * w**(mu - 1) * exp(-w / omega_c)`` and a coherent-state profile
``gamma * w**(nu - 1) * exp(-w / omega_c)``.  For this family the three
spectral integrals that drive pure dephasing -- the decay exponent r(t),
the correlation exponent s(t) and the correlation phase phi(t) -- have
closed forms in terms of the Euler gamma function.  This module evaluates
those closed forms and their long-time limits.

All operations are pure functions of their arguments and are safe to call
concurrently.  Time is measured in units of 1/omega_c.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


def gamma_fn(x: float) -> float:
    """Euler gamma function on the range needed by the kernels.

    Only arguments x > -1 with x not in {0, -1} arise here (the spectral
    exponents exclude the poles by construction), so anything outside that
    range is rejected rather than analytically continued further.

    Parameters
    ----------
    x : float
        Argument, x > -1 and x != 0.

    Returns
    -------
    float
        Gamma(x), accurate to at least 12 significant digits.
    """
    if not math.isfinite(x):
        raise ValueError(f"gamma_fn requires a finite argument, got {x}")
    if x == 0.0:
        raise ValueError("gamma_fn pole at x = 0 (ohmic exponent excluded)")
    if x <= -1.0:
        raise ValueError(f"gamma_fn argument must exceed -1, got {x}")
    return math.gamma(x)


def _bracket(m: float, x: float) -> float:
    """Stable evaluation of 1 - cos(m*atan(x)) / (1 + x^2)^(m/2).

    Written as 2*sin^2(theta/2) + cos(theta)*(1 - R) so the result keeps
    full relative accuracy when both factors are close to one (small x or
    small m), where the naive difference would cancel catastrophically.
    """
    if x == 0.0:
        return 0.0
    theta = m * math.atan(x)
    one_minus_r = -math.expm1(-0.5 * m * math.log1p(x * x))
    return 2.0 * math.sin(0.5 * theta) ** 2 + math.cos(theta) * one_minus_r


def kernel_L(a: float, m: float, t: float, omega_c: float = 1.0) -> float:
    """Cutoff power-law spectral integral with a 1 - cos(w t) window.

    Equals the integral over w in (0, inf) of
    ``a * w**(m-1) * exp(-w/omega_c) * (1 - cos(w*t))``, evaluated through
    its gamma-function closed form.  Valid for m > -1, m != 0; the
    sub-zero range is covered by analytic continuation of Gamma (the
    integral itself converges there because the window supplies w^2
    damping at the origin).

    Parameters
    ----------
    a : float
        Overall amplitude (coupling strength).
    m : float
        Power-law exponent, m > -1 and m != 0.
    t : float
        Time, t >= 0, in units of 1/omega_c.
    omega_c : float
        Cutoff frequency, > 0.
    """
    if t < 0.0:
        raise ValueError(f"kernel_L requires t >= 0, got {t}")
    if omega_c <= 0.0:
        raise ValueError(f"kernel_L requires omega_c > 0, got {omega_c}")
    g = gamma_fn(m)
    return a * g * omega_c**m * _bracket(m, omega_c * t)


@dataclass(frozen=True)
class EnvSpec:
    """Environment and coupling parameters.

    Attributes
    ----------
    alpha : float
        Qubit-environment coupling strength; dimensionless once scaled by
        omega_c**mu.
    mu : float
        Ohmicity exponent of the spectral density.  Sub-ohmic for
        -1 < mu < 0, super-ohmic for mu > 0.  The ohmic point mu = 0 sits
        on a Gamma pole and is rejected.
    gamma : float
        Amplitude of the coherent-state profile; dimensionless once scaled
        by omega_c**nu.
    nu : float
        Exponent of the coherent-state profile, nu > 0.
    omega_c : float
        Cutoff frequency; sets the unit of time (default 1).
    """

    alpha: float
    mu: float
    gamma: float
    nu: float
    omega_c: float = 1.0

    def __post_init__(self):
        if not self.alpha >= 0.0:
            raise ValueError(f"coupling alpha must be >= 0, got {self.alpha}")
        if not self.gamma >= 0.0:
            raise ValueError(f"amplitude gamma must be >= 0, got {self.gamma}")
        if not self.omega_c > 0.0:
            raise ValueError(f"cutoff omega_c must be > 0, got {self.omega_c}")
        if not self.mu > -1.0:
            raise ValueError(f"ohmicity mu must exceed -1, got {self.mu}")
        if self.mu == 0.0:
            raise ValueError("ohmic exponent mu = 0 is not supported (Gamma pole)")
        if not self.nu > 0.0:
            raise ValueError(f"profile exponent nu must be > 0, got {self.nu}")
        if not self.kappa > 0.0:
            raise ValueError(
                f"cross exponent kappa = (mu + nu)/2 must be > 0, got {self.kappa}"
            )

    @property
    def kappa(self) -> float:
        """Cross exponent (mu + nu) / 2 entering s(t) and phi(t)."""
        return 0.5 * (self.mu + self.nu)

    @property
    def alpha_dimless(self) -> float:
        """Dimensionless coupling alpha * omega_c**mu."""
        return self.alpha * self.omega_c**self.mu

    @property
    def gamma_dimless(self) -> float:
        """Dimensionless amplitude gamma * omega_c**nu."""
        return self.gamma * self.omega_c**self.nu

    @classmethod
    def from_dimensionless(cls, alpha_dimless: float, mu: float,
                           gamma_dimless: float, nu: float) -> "EnvSpec":
        """Build from the dimensionless products with omega_c fixed to 1."""
        return cls(alpha=alpha_dimless, mu=mu, gamma=gamma_dimless, nu=nu,
                   omega_c=1.0)


@dataclass(frozen=True)
class DephasingKernels:
    """The kernel triple (r, s, phi) at one time point.

    r is the decay exponent (>= 0), s the correlation exponent
    (s(t) >= s(0) = -gamma*Gamma(nu)*omega_c**nu / 2) and phi the
    correlation phase.  t is in units of 1/omega_c; t = inf marks the
    long-time limit.
    """

    t: float
    r: float
    s: float
    phi: float


def _s_zero(env: EnvSpec) -> float:
    """Initial value s(0) = -(1/2) * gamma * Gamma(nu) * omega_c**nu."""
    return -0.5 * env.gamma * gamma_fn(env.nu) * env.omega_c**env.nu


def kernels_at(env: EnvSpec, t: float) -> DephasingKernels:
    """Evaluate the dephasing kernel triple at time t.

    r(t) = 4 L(alpha, mu, t); s(t) = 2 L(sqrt(alpha*gamma), kappa, t) + s(0);
    phi(t) = sqrt(alpha*gamma) * Gamma(kappa) * omega_c**kappa
             * sin(kappa*atan(omega_c t)) / (1 + omega_c^2 t^2)^(kappa/2).

    Parameters
    ----------
    env : EnvSpec
        Environment parameters.
    t : float
        Time, t >= 0, in units of 1/omega_c.
    """
    if t < 0.0:
        raise ValueError(f"kernels_at requires t >= 0, got {t}")
    cross = math.sqrt(env.alpha * env.gamma)
    r = 4.0 * kernel_L(env.alpha, env.mu, t, env.omega_c)
    s = 2.0 * kernel_L(cross, env.kappa, t, env.omega_c) + _s_zero(env)
    x = env.omega_c * t
    if x == 0.0 or cross == 0.0:
        phi = 0.0
    else:
        kap = env.kappa
        damp = math.exp(-0.5 * kap * math.log1p(x * x))
        phi = (cross * gamma_fn(kap) * env.omega_c**kap
               * math.sin(kap * math.atan(x)) * damp)
    return DephasingKernels(t=t, r=r, s=s, phi=phi)


def kernels_limit(env: EnvSpec) -> DephasingKernels:
    """Analytic t -> inf limit of the kernel triple.

    Requires a super-ohmic exponent mu > 0 (and kappa > 0, guaranteed by
    EnvSpec) so that the oscillatory terms decay:
    r_inf = 4*alpha*Gamma(mu)*omega_c**mu,
    s_inf = 2*sqrt(alpha*gamma)*Gamma(kappa)*omega_c**kappa + s(0),
    phi_inf = 0.

    Note the approach to this limit scales as (omega_c t)**(-mu), which is
    extremely slow for weakly super-ohmic environments (mu << 1).
    """
    if not env.mu > 0.0:
        raise ValueError(
            f"long-time limit requires a super-ohmic exponent mu > 0, got {env.mu}"
        )
    cross = math.sqrt(env.alpha * env.gamma)
    r_inf = 4.0 * env.alpha * gamma_fn(env.mu) * env.omega_c**env.mu
    s_inf = (2.0 * cross * gamma_fn(env.kappa) * env.omega_c**env.kappa
             + _s_zero(env))
    return DephasingKernels(t=math.inf, r=r_inf, s=s_inf, phi=0.0)


def vacuum_overlap(env: EnvSpec) -> float:
    """Overlap of the environment vacuum with its displaced coherent state.

    Equals exp(-(1/2) * gamma * Gamma(nu) * omega_c**nu) = exp(s(0)),
    a real number in (0, 1].
    """
    return math.exp(_s_zero(env))
