# %% [markdown]
# Von Mangoldt tables
# -------------------
# Lambda(n) is log p on powers of a prime p and zero elsewhere.  The table is
# built from a smallest-prime-factor sieve, so deciding whether n is a prime
# power takes a few divisions.

# %%
import numpy as np

from polyrep import mangoldt

table = mangoldt.build(10**6)
print("first prime powers:", table.prime_powers(40))
print("Lambda(32) = log 2 ?", table[32] == np.log(2))

# %%
# psi(x)/x should hover around 1 (prime number theorem).
for x in (10**2, 10**3, 10**4, 10**5, 10**6):
    print(f"psi({x:>7d}) / x = {mangoldt.chebyshev_psi(table, x) / x:.5f}")

# %%
# The cache file stores the spf array with a checksum; reloading rebuilds
# Lambda bit for bit.
import tempfile, os

path = os.path.join(tempfile.mkdtemp(), "sieve.bin")
mangoldt.save_cache(table, path)
back = mangoldt.load_cache(path)
print("cache size (MB):", os.path.getsize(path) / 2**20)
print("identical:", back.lam.tobytes() == table.lam.tobytes())
