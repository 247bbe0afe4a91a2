"""Independent reference implementations used only by the tests."""

import cmath
import math
from fractions import Fraction


def trial_lambda(n: int) -> float:
    """Lambda(n) by trial division: log p if n = p^t, else 0."""
    if n < 2:
        return 0.0
    p = next((d for d in range(2, math.isqrt(n) + 1) if n % d == 0), n)
    m = n
    while m % p == 0:
        m //= p
    return math.log(p) if m == 1 else 0.0


def trial_lambda_list(limit: int) -> list:
    return [trial_lambda(n) for n in range(limit + 1)]


def brute_counts(phi_vals: dict, j: int, lo: int, hi: int) -> dict:
    """Ordered j-tuple weights by nested loops over a {n: (phi(n), Lambda(n))} table."""
    items = [(v, w) for v, w in phi_vals.values() if w > 0 and v <= hi]
    out = {n: 0.0 for n in range(lo, hi + 1)}

    def rec(depth, total, weight):
        if depth == j:
            if lo <= total <= hi:
                out[total] += weight
            return
        for v, w in items:
            if total + v <= hi:
                rec(depth + 1, total + v, weight * w)

    rec(0, 0, 1.0)
    return out


def long_sum(phase, damping, N: int, alpha: float, upto: int) -> complex:
    """sum_{n<=upto} Lambda(n) exp(-damping(n)/N) e(phase(n) alpha), phases reduced exactly."""
    a = Fraction(alpha)
    re = []
    im = []
    for n in range(2, upto + 1):
        lam = trial_lambda(n)
        if lam == 0.0:
            continue
        amp = lam * math.exp(-damping(n) / N)
        if amp == 0.0:
            break
        frac = float((phase(n) * a) % 1)
        v = amp * cmath.exp(2j * math.pi * frac)
        re.append(v.real)
        im.append(v.imag)
    return complex(math.fsum(re), math.fsum(im))
