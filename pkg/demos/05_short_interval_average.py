# %% [markdown]
# Short-interval averages against the main term
# ---------------------------------------------
# The sum of R over (N, N+H] should approach
# (gamma_k^j / gamma_{k,j}) a_k^(-j/k) H N^((j-k)/k) with H = N^theta.
# This runs the same experiment as `polyrep avg` on a small grid and plots it.

# %%
import tempfile

from polyrep.lab import ExperimentConfig, emit_plots, run_average

cfg = ExperimentConfig(phi="0,1", j=2, epsilon=0.05, h_exponent=0.8, n_grid=[10**4, 3 * 10**4, 10**5])
report = run_average(cfg)
print(report.to_csv())
print("trend:", report.summary["verdict"])

# %%
# A leading coefficient a_k > 1 rescales the prediction by a_k^(-j/k).
four = run_average(cfg.replace(phi="0,4", n_grid=[10**5]))
print("phi = 4n^2 ratio:", four.column("ratio")[0])

# %%
out = tempfile.mkdtemp()
for path in emit_plots(report, out):
    print("wrote", path)
