"""
Weighted representation counts

    R(n) = sum over ordered (n_1, ..., n_j) with phi(n_1) + ... + phi(n_j) = n
           of Lambda(n_1) * ... * Lambda(n_j)

on a window n = N+1, ..., N+H, by exhaustive enumeration and by
length-capped iterated convolution.
"""

from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import mangoldt
from . import polyring
from .errors import PreconditionError
from .polyring import IntPolynomial

DIRECT_CUTOFF = 10**6
FFT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class RepSeries:
    """R_{phi,j}(n) for n in [N+1, N+H]."""

    N: int
    H: int
    j: int
    phi: IntPolynomial
    values: np.ndarray
    method: str

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.N + 1, self.N + self.H + 1)

    def __getitem__(self, n: int) -> float:
        if not self.N < n <= self.N + self.H:
            raise KeyError(n)
        return float(self.values[n - self.N - 1])

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            fh.write("n,R\n")
            for n, v in zip(self.n, self.values):
                fh.write(f"{n},{v:.17g}\n")

    @classmethod
    def from_csv(cls, path, phi: IntPolynomial, j: int, method: str = "csv") -> "RepSeries":
        data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
        n = data[:, 0].astype(np.int64)
        return cls(int(n[0]) - 1, len(n), j, phi, data[:, 1].copy(), method)


def _check(phi: IntPolynomial, j: int, N: int, H: int):
    if j < 1:
        raise PreconditionError(f"j must be >= 1, got {j}")
    if H < 0 or N < 0:
        raise PreconditionError(f"need N >= 0 and H >= 0, got N={N}, H={H}")
    n0 = polyring.monotone_threshold(phi)
    for m in range(2, max(n0, 2) + 1):
        if polyring.eval(phi, m) < 1:
            raise PreconditionError(
                f"phi({m}) = {polyring.eval(phi, m)} < 1; counts need phi >= 1 at every prime power"
            )


def _weights(phi: IntPolynomial, top: int, table: Optional[mangoldt.MangoldtTable]):
    """Prime powers n with phi(n) <= top, their phi values and Lambda weights."""
    need = polyring.required_limit(phi, top)
    if table is None:
        table = mangoldt.covering_table(need)
    elif table.limit < need:
        raise PreconditionError(f"Mangoldt table limit {table.limit} too small; need limit >= {need}")
    pp = table.prime_powers(need)
    vals = polyring.eval_array(phi, pp)
    keep = vals <= top
    return pp[keep], vals[keep], table.lam[pp[keep]]


def rep_brute(phi: IntPolynomial, j: int, N: int, H: int, table=None) -> RepSeries:
    """Enumerate every ordered j-tuple of prime powers landing in the window."""
    _check(phi, j, N, H)
    top = N + H
    _, vals, lam = _weights(phi, top, table)
    order = np.argsort(vals, kind="stable")
    vals = [int(v) for v in vals[order]]
    lam = [float(x) for x in lam[order]]
    out = [0.0] * H

    def rec(depth, total, weight):
        left = j - depth
        if left == 0:
            if N < total <= top:
                out[total - N - 1] += weight
            return
        # every remaining summand is at least vals[0]
        room = top - total - (left - 1) * vals[0]
        stop = bisect.bisect_right(vals, room)
        for i in range(stop):
            rec(depth + 1, total + vals[i], weight * lam[i])

    if vals:
        rec(0, 0, 1.0)
    return RepSeries(N, H, j, phi, np.array(out, dtype=np.float64), "brute")


def rep_brute_unordered(phi: IntPolynomial, j: int, N: int, H: int, table=None) -> RepSeries:
    """Same counts from nondecreasing tuples, each weighted by its number of orderings."""
    _check(phi, j, N, H)
    top = N + H
    pp, vals, lam = _weights(phi, top, table)
    items = sorted(zip((int(v) for v in vals), (int(p) for p in pp), lam))
    out = [0.0] * H

    def rec(start, chosen, total):
        if len(chosen) == j:
            if N < total <= top:
                mult = math.factorial(j)
                for c in Counter(chosen).values():
                    mult //= math.factorial(c)
                w = 1.0
                for i in chosen:
                    w *= items[i][2]
                out[total - N - 1] += mult * w
            return
        for i in range(start, len(items)):
            if total + items[i][0] * (j - len(chosen)) > top:
                break
            rec(i, chosen + [i], total + items[i][0])

    rec(0, [], 0)
    return RepSeries(N, H, j, phi, np.array(out), "brute")


def weight_vector(phi: IntPolynomial, top: int, table=None) -> np.ndarray:
    """w[m] = sum of Lambda(n) over prime powers n with phi(n) = m, for m <= top."""
    _, vals, lam = _weights(phi, top, table)
    w = np.zeros(top + 1, dtype=np.float64)
    np.add.at(w, vals, lam)
    return w


def _fold_direct(cur: np.ndarray, w: np.ndarray) -> np.ndarray:
    L = cur.size
    out = np.zeros(L, dtype=np.float64)
    for m in np.flatnonzero(w):
        out[m:] += w[m] * cur[: L - m]
    return out


def _fold_fft(cur: np.ndarray, w: np.ndarray):
    """Capped FFT convolution plus an a-priori round-off bound."""
    L = cur.size
    size = 1 << (2 * L - 1).bit_length()
    out = np.fft.irfft(np.fft.rfft(cur, size) * np.fft.rfft(w, size), size)[:L]
    bound = 8 * np.finfo(float).eps * math.log2(size) * np.sum(np.abs(cur)) * np.sum(np.abs(w))
    return out, bound


def rep_convolve(phi: IntPolynomial, j: int, N: int, H: int, table=None, method: str = "auto") -> RepSeries:
    """j-fold convolution of the weight vector, truncated at N+H.

    ``method`` is ``"direct"``, ``"fft"`` or ``"auto"`` (direct below
    N+H = 10**6).  An FFT fold whose round-off bound exceeds 1e-9 of the
    largest window entry is redone directly.
    """
    _check(phi, j, N, H)
    if method not in ("auto", "direct", "fft"):
        raise ValueError(f"unknown method {method!r}")
    top = N + H
    w = weight_vector(phi, top, table)
    use_fft = method == "fft" or (method == "auto" and top >= DIRECT_CUTOFF)
    tag = "convolution"
    cur = w.copy()
    for _ in range(j - 1):
        if use_fft:
            nxt, bound = _fold_fft(cur, w)
            peak = np.max(np.abs(nxt[N + 1 :])) if H else 0.0
            if bound <= FFT_TOL * peak:
                # entries under the round-off bound are unattainable sums
                cur = np.where(np.abs(nxt) <= bound, 0.0, nxt)
                tag = "fft"
                continue
        cur = _fold_direct(cur, w)
    return RepSeries(N, H, j, phi, cur[N + 1 : top + 1].copy(), tag)


def interval_sum(series: RepSeries) -> float:
    return math.fsum(series.values)


def weighted_interval_sum(series: RepSeries) -> float:
    """sum of R(n) * exp(-n/N) over the window."""
    return math.fsum(series.values * np.exp(-series.n / series.N))
