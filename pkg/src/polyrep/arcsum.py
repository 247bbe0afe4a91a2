"""
Damped exponential sums over prime powers and the smooth quantities
compared against them.

All sums have the form ``sum_n Lambda(n) exp(-d(n)/N) e(f(n) alpha)``
with ``e(x) = exp(2 pi i x)``, where the damping polynomial ``d`` and
frequency polynomial ``f`` are either ``phi`` or ``n^k``.  Every series
is cut at a radius R chosen by :func:`plan_truncation`, which also
certifies a bound for the discarded tail.

Complex powers always use the principal branch.  This is unambiguous
because ``z = 1/N - 2 pi i alpha`` has ``Re z = 1/N > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import mangoldt
from . import polyring
from .errors import DomainError, PreconditionError
from .polyring import IntPolynomial

DEFAULT_TOL = 1e-12
_CHUNK = 1 << 22
# products f*alpha above this lose more than ~1e-10 of phase in plain doubles
_COMPENSATE_ABOVE = 2.0**20


@dataclass(frozen=True)
class ArcPoint:
    alpha: float
    N: int

    @property
    def z(self) -> complex:
        return complex(1.0 / self.N, -2.0 * math.pi * self.alpha)


def z_of(N: int, alpha):
    return 1.0 / N - 2j * np.pi * np.asarray(alpha, dtype=np.float64)


@dataclass(frozen=True)
class TruncationPlan:
    """Series radius R and a certified bound on sum_{n>R} Lambda(n) exp(-d(n)/N)."""

    radius: int
    tail_bound: float
    tol: float = DEFAULT_TOL


def _envelope_tail(damping: IntPolynomial, N: int, R: int) -> float:
    """Upper bound for sum_{n>R} log(n) exp(-d(n)/N).

    Sums the envelope explicitly over (R, 4R], then closes with a
    geometric series that is valid because d is convex from 4R on:
    d(4R + m) >= d(4R) + m * D d(4R) and log(4R + m) <= log(4R) + m/(4R).
    """
    n = np.arange(R + 1, 4 * R + 1, dtype=np.float64)
    d = polyring.eval_array(damping, n.astype(np.int64)).astype(np.float64)
    head = math.fsum(np.log(n) * np.exp(-d / N))
    S = 4 * R
    if not polyring.convex_from(damping, S):
        raise PreconditionError(f"damping polynomial not convex beyond {S}; raise the radius")
    dS = polyring.eval(damping, S)
    step = polyring.eval(damping, S + 1) - dS
    q = math.exp(-step / N)
    if q >= 1.0:
        return math.inf
    base = math.exp(-dS / N)
    # sum_{m>=1} (a + m b) q^m = a q/(1-q) + b q/(1-q)^2
    a, b = math.log(S), 1.0 / S
    return head + base * (a * q / (1 - q) + b * q / (1 - q) ** 2)


def plan_truncation(phi: IntPolynomial, N: int, tol: float = DEFAULT_TOL) -> TruncationPlan:
    """Smallest R >= N^(1/k) with 2 R exp(-phi(R)/(2N)) <= tol whose tail is certified <= tol.

    ``phi`` is the damping polynomial of the target series (use
    ``IntPolynomial.monomial(k)`` for sums damped by ``n^k``).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    k = phi.degree
    R = max(2, math.ceil(N ** (1.0 / k)), polyring.monotone_threshold(phi) + 1)

    def crude(r):
        return 2 * r * math.exp(-polyring.eval(phi, r) / (2 * N))

    if crude(R) > tol:
        lo, hi = R, 2 * R
        while crude(hi) > tol:
            lo, hi = hi, 2 * hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if crude(mid) > tol:
                lo = mid
            else:
                hi = mid
        R = hi
    bound = _envelope_tail(phi, N, R)
    while bound > tol:
        R += max(1, R // 16)
        bound = _envelope_tail(phi, N, R)
    return TruncationPlan(R, bound, tol)


def _two_prod_err(a: np.ndarray, b: np.ndarray, p: np.ndarray) -> np.ndarray:
    """Rounding error of p = a*b (Dekker/Veltkamp, no FMA)."""
    split = 134217729.0  # 2**27 + 1
    t = split * a
    ah = t - (t - a)
    al = a - ah
    t = split * b
    bh = t - (t - b)
    bl = b - bh
    return ((ah * bh - p) + ah * bl + al * bh) + al * bl


def unit_phase(freqs: np.ndarray, alpha: np.ndarray) -> np.ndarray:
    """frac(f * alpha) in [-1/2, 1/2] for integer f, outer product over (alpha, f)."""
    f = freqs.astype(np.float64)[None, :]
    a = np.asarray(alpha, dtype=np.float64)[:, None]
    p = a * f
    frac = p - np.rint(p)
    if f.size and a.size and np.max(np.abs(f)) * np.max(np.abs(a)) > _COMPENSATE_ABOVE:
        frac = frac + _two_prod_err(np.broadcast_to(a, p.shape), np.broadcast_to(f, p.shape), p)
        frac -= np.rint(frac)
    return frac


class ExponentialSum:
    """A truncated sum ``sum_i weights[i] * e(freqs[i] * alpha)``.

    Built once per (phi, N, plan) and evaluated at many alpha.
    """

    def __init__(self, freqs: np.ndarray, weights: np.ndarray, tail_bound: float = 0.0):
        self.freqs = np.asarray(freqs, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.float64)
        self.tail_bound = tail_bound

    @classmethod
    def build(cls, phase: IntPolynomial, damping: IntPolynomial, N: int,
              plan: Optional[TruncationPlan] = None, table=None) -> "ExponentialSum":
        if plan is None:
            plan = plan_truncation(damping, N)
        R = plan.radius
        if table is None:
            table = mangoldt.covering_table(R)
        elif table.limit < R:
            raise PreconditionError(f"Mangoldt table limit {table.limit} below truncation radius {R}")
        pp = table.prime_powers(R)
        freqs = polyring.eval_array(phase, pp)
        damp = polyring.eval_array(damping, pp).astype(np.float64)
        weights = table.lam[pp] * np.exp(-damp / N)
        return cls(freqs, weights, plan.tail_bound)

    @property
    def bandwidth(self) -> int:
        return int(np.max(np.abs(self.freqs))) if self.freqs.size else 0

    def __call__(self, alpha):
        scalar = np.ndim(alpha) == 0
        alpha = np.atleast_1d(np.asarray(alpha, dtype=np.float64)).ravel()
        out = np.empty(alpha.size, dtype=np.complex128)
        step = max(1, _CHUNK // max(1, self.freqs.size))
        for s in range(0, alpha.size, step):
            ang = (2.0 * np.pi) * unit_phase(self.freqs, alpha[s : s + step])
            out[s : s + step] = np.cos(ang) @ self.weights + 1j * (np.sin(ang) @ self.weights)
        return complex(out[0]) if scalar else out


def s_tilde_phi(phi: IntPolynomial, N: int, alpha, plan=None, table=None):
    """sum_n Lambda(n) exp(-phi(n)/N) e(phi(n) alpha)."""
    return ExponentialSum.build(phi, phi, N, plan, table)(alpha)


def s_tilde_k(k: int, N: int, alpha, plan=None, table=None):
    """sum_n Lambda(n) exp(-n^k/N) e(n^k alpha)."""
    mono = IntPolynomial.monomial(k)
    return ExponentialSum.build(mono, mono, N, plan, table)(alpha)


def s_tilde_k_phi(phi: IntPolynomial, N: int, alpha, plan=None, table=None):
    """Mixed sum: damping by n^k, phase by phi.  ``plan`` should be built for n^k."""
    mono = IntPolynomial.monomial(phi.degree)
    return ExponentialSum.build(phi, mono, N, plan, table)(alpha)


def major_approx(k: int, a_k: int, N: int, alpha):
    """gamma_k * (a_k z)^(-1/k), principal branch."""
    if a_k < 1:
        raise DomainError(f"a_k must be >= 1, got {a_k}")
    return gamma_const(k) * np.power(a_k * z_of(N, alpha), -1.0 / k)


def u_sum(alpha, H: int):
    """U(alpha, H) = sum_{m=1}^{H} e(m alpha), via the Dirichlet-kernel closed form."""
    if H < 1:
        raise PreconditionError(f"H must be >= 1, got {H}")
    a = np.asarray(alpha, dtype=np.float64)
    a = a - np.rint(a)
    # sin(pi H a)/sin(pi a) = H sinc(H a)/sinc(a); sinc(a) >= 2/pi on |a| <= 1/2
    val = np.exp(1j * np.pi * (H + 1) * a) * (H * np.sinc(H * a) / np.sinc(a))
    return complex(val) if val.ndim == 0 else val


def gamma_const(k: int) -> float:
    """gamma_k = Gamma(1 + 1/k)."""
    return math.gamma(1.0 + 1.0 / k)


def gamma_kj(k: int, j: int) -> float:
    """gamma_{k,j} = Gamma(j/k)."""
    return math.gamma(j / k)


def a_factor(N: float, C: float) -> float:
    """A(N; C) = exp(C (log N / log log N)^(1/3))."""
    if N <= 15:
        raise DomainError(f"A(N; C) needs N >= 16, got {N}")
    L = math.log(N)
    return math.exp(C * (L / math.log(L)) ** (1.0 / 3.0))


def main_term(N: float, H: float, j: int, k: int, a_k: int = 1) -> float:
    """(gamma_k^j / gamma_{k,j}) * a_k^(-j/k) * H * N^((j-k)/k)."""
    return gamma_const(k) ** j / gamma_kj(k, j) * a_k ** (-j / k) * H * N ** ((j - k) / k)


def grid_eval(phi: IntPolynomial, N: int, grid_size: int, plan=None, table=None,
              expsum: Optional[ExponentialSum] = None) -> np.ndarray:
    """S~_phi(m / M) for m = 0..M-1 by one inverse FFT of the folded weights."""
    if expsum is None:
        expsum = ExponentialSum.build(phi, phi, N, plan, table)
    if grid_size <= expsum.bandwidth:
        raise PreconditionError(
            f"grid size {grid_size} must exceed the series bandwidth {expsum.bandwidth}"
        )
    w = np.zeros(grid_size, dtype=np.float64)
    np.add.at(w, expsum.freqs % grid_size, expsum.weights)
    return np.fft.ifft(w) * grid_size


def telescope_residual(x: complex, y: complex, j: int) -> float:
    """|x^j - y^j - [(x-y)^2 sum_{l=1}^{j-1} l x^(j-1-l) y^(l-1) + j (x-y) y^(j-1)]|."""
    if j < 2:
        raise PreconditionError(f"identity needs j >= 2, got {j}")
    lhs = x**j - y**j
    inner = sum(l * x ** (j - 1 - l) * y ** (l - 1) for l in range(1, j))
    rhs = (x - y) ** 2 * inner + j * (x - y) * y ** (j - 1)
    return abs(lhs - rhs)
