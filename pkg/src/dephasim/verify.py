"""Cross-certification of the closed-form kernels against the quadrature oracle.

The closed forms in :mod:`dephasim.kernels` and the adaptive integrator in
:mod:`dephasim.quadrature` compute the same three quantities by unrelated
routes.  This module compares them point by point over a built-in parameter
grid (spanning sub-ohmic through strongly super-ohmic exponents and four
decades of time) and reports the worst disagreement per kernel.
"""

from __future__ import annotations

from dataclasses import dataclass

from .kernels import EnvSpec, kernels_at
from .quadrature import QuadSpec, integrate_r, integrate_s, integrate_phi

DEFAULT_REL_TOL = 1e-8
DEFAULT_ABS_FLOOR = 1e-12

_GRID_MU = (-0.5, 0.01, 0.2, 1.0, 2.0)
_GRID_NU = (0.2, 1.0)
_GRID_COUPLINGS = ((0.01, 0.05), (0.2, 0.5))
_GRID_TIMES = (0.0, 0.003, 0.01, 0.03, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 50.0,
               100.0)


@dataclass(frozen=True)
class KernelCheck:
    """One closed-form vs oracle comparison."""

    kernel: str
    env: EnvSpec
    t: float
    closed: float
    oracle: float

    @property
    def abs_err(self) -> float:
        return abs(self.closed - self.oracle)

    @property
    def rel_err(self) -> float:
        scale = abs(self.oracle)
        return self.abs_err / scale if scale > 0.0 else 0.0

    def within(self, rel_tol: float = DEFAULT_REL_TOL,
               abs_floor: float = DEFAULT_ABS_FLOOR) -> bool:
        """Agreement test: rel_tol relative, abs_floor when the value is tiny."""
        return self.abs_err <= max(rel_tol * abs(self.oracle), abs_floor)


def default_grid() -> list[tuple[EnvSpec, float]]:
    """Built-in certification grid of (env, t) points.

    Crosses the ohmicity and profile exponents with two coupling scales and
    twelve times in [0, 100/omega_c], skipping combinations whose cross
    exponent kappa would be non-positive.  Includes the sub-ohmic point
    mu = -0.5.
    """
    points = []
    for mu in _GRID_MU:
        for nu in _GRID_NU:
            if mu + nu <= 0.0:
                continue
            for alpha, gamma in _GRID_COUPLINGS:
                env = EnvSpec(alpha=alpha, mu=mu, gamma=gamma, nu=nu)
                points.extend((env, t) for t in _GRID_TIMES)
    return points


def compare_kernels(env: EnvSpec, t: float,
                    quad: QuadSpec | None = None) -> list[KernelCheck]:
    """Compare all three kernels at one (env, t) point."""
    closed = kernels_at(env, t)
    return [
        KernelCheck("r", env, t, closed.r, integrate_r(env, t, quad)),
        KernelCheck("s", env, t, closed.s, integrate_s(env, t, quad)),
        KernelCheck("phi", env, t, closed.phi, integrate_phi(env, t, quad)),
    ]


@dataclass
class VerificationReport:
    """Outcome of a closed-form vs oracle sweep."""

    checks: list[KernelCheck]
    rel_tol: float
    abs_floor: float

    @property
    def n_points(self) -> int:
        return len(self.checks) // 3

    @property
    def failures(self) -> list[KernelCheck]:
        return [c for c in self.checks
                if not c.within(self.rel_tol, self.abs_floor)]

    @property
    def all_ok(self) -> bool:
        return not self.failures

    def worst(self, kernel: str) -> KernelCheck:
        rows = [c for c in self.checks if c.kernel == kernel]
        return max(rows, key=lambda c: c.abs_err / max(
            self.abs_floor / self.rel_tol, abs(c.oracle)))


def run_verification(points: list[tuple[EnvSpec, float]] | None = None,
                     quad: QuadSpec | None = None,
                     rel_tol: float = DEFAULT_REL_TOL,
                     abs_floor: float = DEFAULT_ABS_FLOOR) -> VerificationReport:
    """Run the comparison over a grid (the built-in one by default)."""
    checks = []
    for env, t in (points if points is not None else default_grid()):
        checks.extend(compare_kernels(env, t, quad))
    return VerificationReport(checks=checks, rel_tol=rel_tol,
                              abs_floor=abs_floor)
