# %% [markdown]
# # Bethe roots as minima of a convex function
#
# Each quantum number kappa in the (m, n) box gives a strictly convex
# Yang-Yang function.  Newton's method from the Schur-limit point finds its
# minimum; the gradient flow reaches the same point.

# %%
import numpy as np

from qtoda import LatticeConfig, ModelParams, MorseProblem, enumerate_partitions, gradient_flow, solve_bethe

cfg = LatticeConfig(n=2, m=3)
params = ModelParams(q=0.4, p_plus=0.3, q_plus=-0.2, p_minus=0.3, q_minus=-0.2)

for kappa in enumerate_partitions(cfg.transpose()):
    sol = solve_bethe(MorseProblem(cfg, params, kappa))
    print(f"{str(kappa):10s} xi={np.round(sol.xi, 6)}  E={sol.energy:+.6f}  newton steps={sol.iterations}")

# %% [markdown]
# The flow converges exponentially, at least as fast as the Hessian floor.

# %%
prob = MorseProblem(cfg, params, enumerate_partitions(cfg.transpose())[3])
flow = gradient_flow(prob)
target = solve_bethe(prob).xi
for i in range(0, len(flow.t), 40):
    print(f"t={flow.t[i]:.3f}  error={np.max(np.abs(flow.xi[i] - target)):.2e}")
