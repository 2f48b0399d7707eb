"""Exact pure-dephasing dynamics of a qubit in an infinite bosonic bath.

Compares the reduced qubit evolution from an initially correlated
qubit-environment state against the evolution from the matching
uncorrelated product state, and quantifies the difference through the
trace distance and the linear entropy.  All dynamics is evaluated through
gamma-function closed forms of the spectral integrals, cross-certified by
an independent adaptive quadrature oracle.
"""

__version__ = "0.1.0"

from .dynamics import (DecoherenceFactor, InitState, QubitState,
                       decoherence_factor, normalization_c, rho_correlated,
                       rho_product)
from .experiments import (DEFAULT_SWEEP_GRIDS, Extremum, SaturationError,
                          SweepTable, TrajectoryTable, detect_extremum,
                          distance_limit, geometric_time_grid,
                          linear_time_grid, saturation_time, sweep,
                          trajectory)
from .kernels import (DephasingKernels, EnvSpec, gamma_fn, kernel_L,
                      kernels_at, kernels_limit, vacuum_overlap)
from .metrics import (entropy_correlated, entropy_product, linear_entropy,
                      purity, trace_distance)
from .quadrature import (QuadratureError, QuadSpec, integrate_phi,
                         integrate_r, integrate_s)
from .verify import (KernelCheck, VerificationReport, compare_kernels,
                     default_grid, run_verification)

__all__ = [
    "__version__",
    "DecoherenceFactor", "InitState", "QubitState", "decoherence_factor",
    "normalization_c", "rho_correlated", "rho_product",
    "DEFAULT_SWEEP_GRIDS", "Extremum", "SaturationError", "SweepTable",
    "TrajectoryTable", "detect_extremum", "distance_limit",
    "geometric_time_grid", "linear_time_grid", "saturation_time", "sweep",
    "trajectory",
    "DephasingKernels", "EnvSpec", "gamma_fn", "kernel_L", "kernels_at",
    "kernels_limit", "vacuum_overlap",
    "entropy_correlated", "entropy_product", "linear_entropy", "purity",
    "trace_distance",
    "QuadratureError", "QuadSpec", "integrate_phi", "integrate_r",
    "integrate_s",
    "KernelCheck", "VerificationReport", "compare_kernels", "default_grid",
    "run_verification",
]
