# %% [markdown]
# Two-photon operating map over (loss, alpha): below the shot-noise limit,
# better than single photons only, or neither.

# %%
import collections

from noonlab import analytic as an
from noonlab import metrology as me
from noonlab import scan

from _plot import figure_dir

# %%
spec = scan.ScanSpec(
    axes=(scan.Axis("loss", 0, 1, 201), scan.Axis("alpha", 0, 1, 201)),
    quantities=("fisher_max", "regime"),
    fixed={"n": 2},
)
res = scan.run_scan(spec)
print(collections.Counter(str(c.values["regime"]) for c in res.cells))

# %%
lo, hi = an.superiority_alpha_interval_lossless(2)
print("lossless superiority:", lo, hi)
print("max loss with superiority at alpha_opt:", me.find_superiority_threshold(2))
print("loss where single photons catch up:", me.find_advantage_threshold(2))
print("boundaries at alpha=1/2:", an.superiority_loss_bound(0.5, 2), me.advantage_loss_bound(0.5, 2))

# %%
# larger N: wider alpha window, tighter loss budget
for n in (2, 3, 5, 10):
    print(n, an.superiority_alpha_interval_lossless(n), an.superiority_loss_bound_optimal_alpha(n))

# %%
out = figure_dir()
if out:
    import matplotlib.pyplot as plt
    import numpy as np

    codes = {"NoAdvantage": 0, "AdvantageOnly": 1, "Superiority": 2}
    grid = np.vectorize(lambda s: codes[str(s)])(res.grid("regime"))
    fig, ax = plt.subplots()
    ax.imshow(grid, origin="lower", extent=(0, 1, 0, 1), aspect="auto")
    ax.set_xlabel("alpha")
    ax.set_ylabel("loss")
    fig.savefig(f"{out}/regimes.png", dpi=120)
