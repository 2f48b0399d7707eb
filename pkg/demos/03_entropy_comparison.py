"""Linear entropy of the two trajectories: correlations slow the mixing.

The product-state evolution always ends up at least as mixed as the
correlated one -- the correlation exponent satisfies s(t) >= s(0), which
pushes the correlated decoherence factor magnitude above the product one.
The entropy gap widens with the correlation strength lambda.

Run from the repository root:  python demos/03_entropy_comparison.py
"""

import pathlib

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

from dephasim import (EnvSpec, InitState, entropy_correlated,
                      entropy_product, geometric_time_grid, trajectory)

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

env = EnvSpec.from_dimensionless(alpha_dimless=0.01, mu=0.01,
                                 gamma_dimless=0.05, nu=0.2)
grid = geometric_time_grid(t_max=1e3)

fig, ax = plt.subplots(figsize=(7, 4.5))
for lam, color in ((0.5, "C0"), (1.0, "C1")):
    init = InitState.from_populations(0.5, lam, epsilon=1.0)
    table = trajectory(env, init, grid)
    ax.semilogx(table.t[1:], table.entropy_corr[1:], color=color,
                label=f"correlated start, lambda = {lam:g}")
    ax.semilogx(table.t[1:], table.entropy_prod[1:], color=color, ls="--",
                label=f"product start,    lambda = {lam:g}")
    gap = table.entropy_prod - table.entropy_corr
    print(f"lambda = {lam:g}: entropy gap at t = 1e3 is {gap[-1]:.5f} "
          f"(min over grid {gap.min():.2e}, never negative)")

# Spot check of the closed-form route against the table values
init = InitState.from_populations(0.5, 1.0, epsilon=1.0)
print(f"closed forms at t = 10: S_corr = "
      f"{entropy_correlated(env, init, 10.0):.6f}, "
      f"S_prod = {entropy_product(env, init, 10.0):.6f}")

ax.set_xlabel("t  (units of 1/omega_c)")
ax.set_ylabel("linear entropy  1 - Tr(rho^2)")
ax.set_title("An initially correlated qubit stays purer")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig(OUT / "entropy_comparison.png", dpi=150)
print(f"wrote {OUT / 'entropy_comparison.png'}")
