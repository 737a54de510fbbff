# %% [markdown]
# # Configurations, weights and the hamiltonian
#
# Particles sit on the sites 0..m; a configuration of n particles is a
# partition in the n x m box.  We build the matrix on a small box and check
# that it is symmetric for the weighted inner product.

# %%
import numpy as np

from qtoda import LatticeConfig, ModelParams, build_toda, check_self_adjoint, enumerate_partitions

cfg = LatticeConfig(n=2, m=2)
params = ModelParams(q=0.3, p_plus=0.2, q_plus=0.2, p_minus=0.2, q_minus=0.2)
points = enumerate_partitions(cfg)
print("configurations:", [str(mu) for mu in points])

# %%
op = build_toda(cfg, params)
np.set_printoptions(precision=4, suppress=True)
print(op.matrix)
print("weights:", op.weight.values)

# %% [markdown]
# Row mu times its weight equals column mu times the other weight.

# %%
print("weighted asymmetry:", check_self_adjoint(op))
