# %% [markdown]
# # The q -> 1 limit
#
# At q = 1 the Bethe equations decouple.  Their roots are the zeros of a
# Bernstein-Szego polynomial and the eigenfunctions factorize.  Near q = 1 the
# weights converge linearly in 1 - q; the Bethe roots converge linearly only
# when kappa has distinct parts.

# %%
import numpy as np

from qtoda import LatticeConfig, ModelParams, MorseProblem, enumerate_partitions, solve_bethe
from qtoda.q1_limit import aw_roots, q1_bethe_solution, verify_q1_eigensystem

cfg = LatticeConfig(n=2, m=3)
base = ModelParams(0.0, 0.3, -0.2, 0.25, 0.1)
roots = aw_roots(cfg.n, base)
print("roots:", roots.thetas)

rep = verify_q1_eigensystem(cfg, base)
print("checks:", rep["checks"])

# %%
for kappa in enumerate_partitions(cfg.transpose())[:4]:
    limit = q1_bethe_solution(kappa, roots)
    errs = [np.max(np.abs(solve_bethe(MorseProblem(cfg, base.with_q(1 - e), kappa)).xi - limit)) for e in (1e-3, 1e-4, 1e-5)]
    print(str(kappa), ["%.2e" % e for e in errs])
