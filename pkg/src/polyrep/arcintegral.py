"""
Integrals over the unit circle built from the exponential sums.

Two regimes are used.  Integrals over the whole period [-1/2, 1/2] of a
trigonometric polynomial are evaluated exactly on a uniform grid that
exceeds the bandwidth.  Integrals over part of the period go through
composite Gauss-Legendre panels (see :mod:`polyrep.quadrature`).

Integrands of the form g(alpha) with g(-alpha) = conj(g(alpha)) are real
after integration over a symmetric domain; with ``symmetric=True`` only
the right half is computed and twice its real part returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import arcsum
from .arcsum import ExponentialSum, TruncationPlan, z_of
from .errors import NumericToleranceError, PreconditionError
from .polyring import IntPolynomial
from .quadrature import QuadratureSpec, integrate


@dataclass(frozen=True)
class KernelValue:
    integral: complex
    main: float
    error: float


def z_bandwidth(N: int) -> float:
    """Panel-sizing frequency that resolves z^(-mu) near alpha = 0.

    The Fourier transform of z^(-mu) decays like exp(-t/N), so resolving
    frequencies up to ~8N keeps panels narrower than its 1/(2 pi N) peak.
    """
    return 8.0 * N


def _spec_or_default(spec, a, b, freq, **kw):
    if spec is None:
        return QuadratureSpec.for_interval(a, b, freq, **kw)
    if spec.max_frequency < freq:
        raise PreconditionError(f"spec.max_frequency {spec.max_frequency} below integrand frequency {freq}")
    return spec


def _symmetric(f, lo, hi, spec, symmetric):
    """Integral of f over [-hi, -lo] U [lo, hi] (lo = 0 gives [-hi, hi])."""
    if symmetric:
        res = integrate(f, lo, hi, spec)
        return complex(2.0 * res.value.real, 0.0), 2.0 * res.error
    if lo == 0:
        res = integrate(f, -hi, hi, _double(spec))
        return res.value, res.error
    left = integrate(f, -hi, -lo, spec)
    right = integrate(f, lo, hi, spec)
    return left.value + right.value, left.error + right.error


def _double(spec):
    return QuadratureSpec(2 * spec.panel_count, spec.nodes_per_panel, spec.max_frequency,
                          spec.abs_tol, spec.rel_tol)


def kernel_integral(N: int, mu: float, n: int, X: float, spec: Optional[QuadratureSpec] = None) -> KernelValue:
    """int_{-X}^{X} z^(-mu) e(-n alpha) d alpha, with main term e^(-n/N) n^(mu-1) / Gamma(mu)."""
    if mu <= 0 or n < 1 or X <= 0:
        raise PreconditionError("need mu > 0, n >= 1, X > 0")
    spec = _spec_or_default(spec, -X, X, n + z_bandwidth(N))

    def f(a):
        return np.power(z_of(N, a), -mu) * np.exp(-2j * np.pi * n * a)

    res = integrate(f, -X, X, spec)
    main = math.exp(-n / N) * n ** (mu - 1) / math.gamma(mu)
    return KernelValue(res.value, main, res.error)


def _major_model(phi: IntPolynomial, N: int):
    k, a_k = phi.degree, phi.lead
    g = arcsum.gamma_const(k)
    return lambda a: g * np.power(a_k * z_of(N, a), -1.0 / k)


def l2_error_integral(phi: IntPolynomial, N: int, xi: float, plan: Optional[TruncationPlan] = None,
                      spec: Optional[QuadratureSpec] = None, table=None) -> float:
    """int_{-xi}^{xi} |S~_phi(alpha) - gamma_k (a_k z)^(-1/k)|^2 d alpha."""
    if not 0 <= xi <= 0.5:
        raise PreconditionError(f"xi must lie in [0, 1/2], got {xi}")
    if xi == 0:
        return 0.0
    S = ExponentialSum.build(phi, phi, N, plan, table)
    model = _major_model(phi, N)
    spec = _spec_or_default(spec, 0.0, xi, S.bandwidth)
    res = integrate(lambda a: np.abs(S(a) - model(a)) ** 2, 0.0, xi, spec)
    return 2.0 * res.value.real


def tolev_F(phi: IntPolynomial, N: int, tau: float, plan: Optional[TruncationPlan] = None,
            spec: Optional[QuadratureSpec] = None, table=None) -> float:
    """F(tau) = int_0^tau |S~_phi(alpha)|^2 d alpha."""
    if not 0 < tau <= 0.5:
        raise PreconditionError(f"tau must lie in (0, 1/2], got {tau}")
    S = ExponentialSum.build(phi, phi, N, plan, table)
    spec = _spec_or_default(spec, 0.0, tau, S.bandwidth)
    res = integrate(lambda a: np.abs(S(a)) ** 2, 0.0, tau, spec)
    return res.value.real


def parseval_sum(phi: IntPolynomial, N: int, plan: Optional[TruncationPlan] = None, table=None) -> float:
    """int_{-1/2}^{1/2} |S~_phi|^2 = sum over distinct frequencies of (summed weight)^2."""
    S = ExponentialSum.build(phi, phi, N, plan, table)
    freqs, inv = np.unique(S.freqs, return_inverse=True)
    w = np.zeros(freqs.size)
    np.add.at(w, inv, S.weights)
    return math.fsum(w * w)


def i1(N: int, H: int, j: int, k: int, a_k: int, tau: float, spec: Optional[QuadratureSpec] = None,
       symmetric: bool = True):
    """Major-arc model integral and its closed-form companion.

    Returns ``(value, companion)`` where ``value`` is
    int_{-tau}^{tau} (a_k z)^(-j/k) U(-alpha, H) e(-N alpha) d alpha and
    ``companion`` is a_k^(-j/k) / Gamma(j/k) * sum_{n=N+1}^{N+H} e^(-n/N) n^((j-k)/k).
    """
    if j < 1:
        raise PreconditionError(f"j must be >= 1, got {j}")
    if not 0 <= tau <= 0.5:
        raise PreconditionError(f"tau must lie in [0, 1/2], got {tau}")
    n = np.arange(N + 1, N + H + 1, dtype=np.float64)
    companion = a_k ** (-j / k) / arcsum.gamma_kj(k, j) * math.fsum(np.exp(-n / N) * n ** ((j - k) / k))
    if tau == 0:
        return 0j, companion
    mu = j / k
    spec = _spec_or_default(spec, 0.0, tau, N + H + z_bandwidth(N))

    def f(a):
        return np.power(a_k * z_of(N, a), -mu) * arcsum.u_sum(-a, H) * np.exp(-2j * np.pi * N * a)

    value, _ = _symmetric(f, 0.0, tau, spec, symmetric)
    return value, companion


def _product_frequency(S: ExponentialSum, j: int, N: int, H: int) -> int:
    return j * S.bandwidth + N + H


def i2(phi: IntPolynomial, j: int, N: int, H: int, tau: float, plan=None, spec=None, table=None,
       symmetric: bool = True) -> complex:
    """int_{-tau}^{tau} (S~^j - gamma_k^j (a_k z)^(-j/k)) U(-alpha, H) e(-N alpha) d alpha."""
    if j < 1:
        raise PreconditionError(f"j must be >= 1, got {j}")
    if not 0 < tau < 0.5:
        raise PreconditionError(f"tau must lie in (0, 1/2), got {tau}")
    S = ExponentialSum.build(phi, phi, N, plan, table)
    model = _major_model(phi, N)
    spec = _spec_or_default(spec, 0.0, tau, _product_frequency(S, j, N, H))

    def f(a):
        return (S(a) ** j - model(a) ** j) * arcsum.u_sum(-a, H) * np.exp(-2j * np.pi * N * a)

    return _symmetric(f, 0.0, tau, spec, symmetric)[0]


def i3(phi: IntPolynomial, j: int, N: int, H: int, tau: float, plan=None, spec=None, table=None,
       symmetric: bool = True) -> complex:
    """int over [-1/2, -tau] U [tau, 1/2] of S~^j U(-alpha, H) e(-N alpha) d alpha."""
    if j < 1:
        raise PreconditionError(f"j must be >= 1, got {j}")
    if not 0 < tau < 0.5:
        raise PreconditionError(f"tau must lie in (0, 1/2), got {tau}")
    S = ExponentialSum.build(phi, phi, N, plan, table)
    spec = _spec_or_default(spec, tau, 0.5, _product_frequency(S, j, N, H))

    def f(a):
        return S(a) ** j * arcsum.u_sum(-a, H) * np.exp(-2j * np.pi * N * a)

    return _symmetric(f, tau, 0.5, spec, symmetric)[0]


def default_grid_size(phi: IntPolynomial, j: int, N: int, H: int, plan=None) -> int:
    """Smallest power of two above j * phi(R) + N + H."""
    S = ExponentialSum.build(phi, phi, N, plan)
    return 1 << (_product_frequency(S, j, N, H)).bit_length()


def full_circle_sum(phi: IntPolynomial, j: int, N: int, H: int, plan=None, grid_size: Optional[int] = None,
                    table=None) -> float:
    """Uniform-grid value of int_{-1/2}^{1/2} S~^j U(-alpha, H) e(-N alpha) d alpha.

    Exact for the truncated series once the grid exceeds j * phi(R) + N + H.
    """
    if j < 1:
        raise PreconditionError(f"j must be >= 1, got {j}")
    S = ExponentialSum.build(phi, phi, N, plan, table)
    need = _product_frequency(S, j, N, H)
    M = grid_size if grid_size is not None else 1 << need.bit_length()
    if M <= need:
        raise PreconditionError(f"grid size {M} must exceed j*phi(R)+N+H = {need}")
    Sj = arcsum.grid_eval(phi, N, M, expsum=S) ** j
    m = np.arange(M, dtype=np.int64)
    U = arcsum.u_sum(-m / M, H)
    shift = np.exp(-2j * np.pi * ((N * m) % M) / M)
    terms = Sj * U * shift
    total = complex(math.fsum(terms.real), math.fsum(terms.imag)) / M
    scale = max(1.0, abs(total))
    if abs(total.imag) > 1e-8 * scale:
        raise NumericToleranceError(f"full-circle sum has imaginary part {total.imag:.3e}")
    return total.real


def circle_coefficients(phi: IntPolynomial, j: int, N: int, ns, plan=None, grid_size: Optional[int] = None,
                        table=None) -> np.ndarray:
    """(1/M) sum_m S~(m/M)^j e(-n m/M) for each n, i.e. exp(-n/N) R(n) of the truncated series."""
    S = ExponentialSum.build(phi, phi, N, plan, table)
    need = j * S.bandwidth
    M = grid_size if grid_size is not None else 1 << need.bit_length()
    if M <= need:
        raise PreconditionError(f"grid size {M} must exceed j*phi(R) = {need}")
    coeffs = np.fft.fft(arcsum.grid_eval(phi, N, M, expsum=S) ** j) / M
    return coeffs[np.asarray(ns) % M]


def damped_power_sum(N: int, H: int, lam: float):
    """(sum_{n=N+1}^{N+H} e^(-n/N) n^lam, e^(-1) H N^lam)."""
    if H > N:
        raise PreconditionError(f"need H <= N, got H={H}, N={N}")
    if H <= 0:
        return 0.0, 0.0
    n = np.arange(N + 1, N + H + 1, dtype=np.float64)
    exact = math.fsum(np.exp(-n / N) * n**lam)
    return exact, math.exp(-1.0) * H * N**lam
