# %% [markdown]
# The circle identity and its three pieces
# ----------------------------------------
# The damped interval sum of R equals the integral over the whole circle of
# S^j U(-alpha, H) e(-N alpha).  The integrand is a trigonometric polynomial,
# so a uniform grid above its bandwidth integrates it exactly.  Splitting the
# circle at tau gives the major-arc model I1, its error I2, and the rest I3.

# %%
from polyrep import arcintegral, arcsum, repcount
from polyrep.polyring import IntPolynomial

phi, j, N, H = IntPolynomial.from_text("0,1"), 2, 600, 80
plan = arcsum.plan_truncation(phi, N)
full = arcintegral.full_circle_sum(phi, j, N, H, plan)
exact = repcount.weighted_interval_sum(repcount.rep_brute(phi, j, N, H))
print(f"full circle {full:.12f}\nbrute force {exact:.12f}")

# %%
tau = 0.05
g = arcsum.gamma_const(2) ** j
v1, companion = arcintegral.i1(N, H, j, 2, 1, tau)
v2 = arcintegral.i2(phi, j, N, H, tau, plan)
v3 = arcintegral.i3(phi, j, N, H, tau, plan)
print(f"gamma^j I1 = {(g * v1).real:.6f}  (closed form {g * companion:.6f})")
print(f"I2 = {v2.real:.6f}   I3 = {v3.real:.6f}")
print(f"sum = {(g * v1 + v2 + v3).real:.10f}  vs full circle {full:.10f}")
