# %% [markdown]
# Coincidence statistics of an imbalanced N00N probe with loss on one arm,
# and how the input weight can undo the loss for fringe contrast.

# %%
import math

import numpy as np

from noonlab import analytic as an
from noonlab import fock
from noonlab.analytic import ProbeConfig

from _plot import figure_dir

# %%
cfg = ProbeConfig(n_photons=2, alpha=0.4, loss=0.1, phase=math.pi / 4)
dist = an.coincidence_distribution(cfg)
print("P_i      ", np.round(dist.probs, 6))
print("oracle   ", np.round(fock.simulate(cfg).probs, 6))
print("detected ", dist.total, "=", an.sum_rule(2, 0.4, 0.1))

# %%
# fringe over one period: all outcomes oscillate as cos(N phi)
phis = np.linspace(0, math.pi / 2, 9)
for phi in phis:
    p = an.coincidence_distribution(ProbeConfig(2, 0.4, 0.1, phi)).probs
    print(f"phi={phi:.3f}  " + "  ".join(f"{x:.4f}" for x in p))

# %%
# contrast against alpha at 30% loss; full contrast at alpha_V
alphas = np.linspace(0, 1, 201)
for n in (1, 2, 5):
    v = [an.visibility(a, 0.3, n) for a in alphas]
    a_v = an.optimal_alpha_for_visibility(0.3, n)
    print(f"N={n}: alpha_V={a_v:.7f}  V(alpha_V)={an.visibility(a_v, 0.3, n):.15f}  grid max={max(v):.6f}")

# %%
# for alpha <= 1/2 a loss exists that balances the arms
for a in (0.1, 0.3, 0.5, 0.7):
    print(a, an.optimal_loss_for_visibility(a, 2))

# %%
out = figure_dir()
if out:
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots()
    for n in (1, 2, 5):
        ax.plot(alphas, [an.visibility(a, 0.3, n) for a in alphas], label=f"N={n}")
    ax.set_xlabel("alpha")
    ax.set_ylabel("visibility at p=0.3")
    ax.legend()
    fig.savefig(f"{out}/visibility.png", dpi=120)
