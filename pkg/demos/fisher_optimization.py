# %% [markdown]
# Where the Fisher information peaks in alpha, and how that differs from
# the contrast optimum.

# %%
import numpy as np

from noonlab import analytic as an
from noonlab import metrology as me

from _plot import figure_dir

# %%
for p in (0.0, 0.2, 0.5, 0.9):
    r = me.maximize_fisher_over_alpha(p, 2)
    print(f"p={p}: alpha_opt={r.location_closed_form:.10f} search={r.location_numeric:.10f} "
          f"F={r.value_closed_form:.6f} gap={r.discrepancy:.1e}")

# %%
# contrast optimum at N equals Fisher optimum at 2N
p = 0.3
print(an.optimal_alpha_for_visibility(p, 3), an.optimal_alpha_for_fisher(p, 6))
print("F at alpha_V:  ", an.fisher_information_max(3, an.optimal_alpha_for_visibility(p, 3), p))
print("F at alpha_opt:", an.fisher_at_optimal_alpha(p, 3))

# %%
# loss only ever hurts
losses = np.linspace(0, 0.99, 100)
f = np.array([an.fisher_information_max(5, 0.2, q) for q in losses])
print("monotone:", bool(np.all(np.diff(f) < 0)), " dF/dp(0.3) =", an.fisher_loss_derivative(5, 0.2, 0.3))

# %%
out = figure_dir()
if out:
    import matplotlib.pyplot as plt

    alphas = np.linspace(0, 1, 201)
    fig, ax = plt.subplots()
    for q in (0.0, 0.2, 0.5):
        ax.plot(alphas, [an.fisher_information_max(2, a, q) for a in alphas], label=f"p={q}")
    ax.axhline(1.0, color="k", lw=0.5)
    ax.set_xlabel("alpha")
    ax.set_ylabel("F (N=2)")
    ax.legend()
    fig.savefig(f"{out}/fisher.png", dpi=120)
