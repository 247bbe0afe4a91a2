# %% [markdown]
# Damped exponential sums near zero
# ---------------------------------
# S(alpha) = sum Lambda(n) exp(-phi(n)/N) e(phi(n) alpha) is truncated at a
# radius R whose discarded tail is bounded explicitly.  Near alpha = 0 it is
# close to gamma_k z^(-1/k) with z = 1/N - 2 pi i alpha.

# %%
import numpy as np

from polyrep import arcsum
from polyrep.polyring import IntPolynomial

phi = IntPolynomial.from_text("1,1")  # n^2 + n
N = 10**4
plan = arcsum.plan_truncation(phi, N, tol=1e-12)
print(f"radius {plan.radius}, certified tail <= {plan.tail_bound:.2e}")

S = arcsum.ExponentialSum.build(phi, phi, N, plan)
alphas = np.array([0.0, 1e-5, 1e-4, 1e-3, 1e-2])
model = arcsum.major_approx(phi.degree, phi.lead, N, alphas)
for a, s, m in zip(alphas, S(alphas), model):
    print(f"alpha={a:7.0e}  |S|={abs(s):9.3f}  |model|={abs(m):9.3f}  |S-model|={abs(s - m):7.3f}")

# %%
# Away from zero the sum is much smaller than S(0) ~ gamma_2 sqrt(N).
# n^2 + n is always even, so alpha = 1/2 is a second peak: S(1/2) = S(0).
grid = np.linspace(0.05, 0.45, 2001)
print("S(0) =", S(0.0).real, " max |S| on [0.05, 0.45] =", np.abs(S(grid)).max())
print("S(1/2) =", S(0.5).real)

# %%
# On a uniform grid with more points than the bandwidth, one inverse FFT
# gives every value at once.
M = 1 << S.bandwidth.bit_length()
vals = arcsum.grid_eval(phi, N, M, expsum=S)
m = 12345
print("grid vs pointwise at m/M:", abs(vals[m] - S(m / M)))
