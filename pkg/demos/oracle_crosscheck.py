# %% [markdown]
# The closed forms against a brute-force Fock-space simulation.

# %%
import math

from noonlab import fock
from noonlab import metrology as me
from noonlab.analytic import ProbeConfig

# %%
results = me.verify_grid(6)
worst = max(results, key=lambda r: r.probability_diff)
print(len(results), "points, worst |dP| =", worst.probability_diff, "at", worst.config)

# %%
# Fisher information: stable closed form vs finite differences of the simulation
for cfg in (ProbeConfig(2, 0.4, 0.1, math.pi / 4), ProbeConfig(5, 0.3, 0.2, 0.4)):
    r = me.verify_point(cfg)
    print(cfg.n_photons, r.fisher_diff)

# %%
# losing photons before or after the phase only matters to the environment
cfg = ProbeConfig(3, 0.35, 0.45, 0.8)
a = fock.output_state(cfg, "phase-loss")
b = fock.output_state(cfg, "loss-phase")
print("full state gap:", a.distance(b))
_, ra = fock.reduced_density_matrix(a)
_, rb = fock.reduced_density_matrix(b)
print("reduced state gap:", abs(ra - rb).max())
