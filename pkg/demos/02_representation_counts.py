# %% [markdown]
# Weighted representation counts
# ------------------------------
# R(n) adds Lambda(n1)...Lambda(nj) over ordered tuples with
# phi(n1) + ... + phi(nj) = n.  Brute force enumerates the tuples;
# rep_convolve folds a weight vector j times and caps it at N+H.

# %%
import time

import numpy as np

from polyrep import repcount
from polyrep.polyring import IntPolynomial

phi = IntPolynomial.from_text("0,1")  # n^2
N, H = 5000, 100

t = time.perf_counter()
brute = repcount.rep_brute(phi, 2, N, H)
t_brute = time.perf_counter() - t
t = time.perf_counter()
conv = repcount.rep_convolve(phi, 2, N, H)
t_conv = time.perf_counter() - t
print(f"brute {t_brute:.3f}s  convolution {t_conv:.3f}s")
print("max abs difference:", np.max(np.abs(brute.values - conv.values)))

# %%
# Most n in the window have no representation as p^a squared plus q^b squared.
nz = np.flatnonzero(conv.values)
print(f"{nz.size} of {H} entries are nonzero; e.g. R({conv.n[nz[0]]}) = {conv.values[nz[0]]:.6f}")

# %%
# For large windows the fold switches to FFT, guarded by a round-off bound.
big = repcount.rep_convolve(phi, 2, 10**6, 10**4)
print("method at N = 1e6:", big.method)
print("interval sum:", repcount.interval_sum(big))
