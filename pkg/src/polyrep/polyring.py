"""
Integer polynomials with zero constant term.

A polynomial ``phi(n) = a_1 n + ... + a_k n^k`` is stored by its
coefficients ``(a_1, ..., a_k)``, lowest degree first.  The leading
coefficient must be positive; lower coefficients may be negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import ConfigError, DomainError

_INT64_MAX = 2**63 - 1


@dataclass(frozen=True)
class IntPolynomial:
    """phi(n) = sum_{h=1}^{k} coeffs[h-1] * n**h."""

    coeffs: Tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise ValueError("polynomial needs at least one coefficient")
        for a in coeffs:
            if isinstance(a, bool) or not isinstance(a, (int, np.integer)):
                raise TypeError(f"coefficients must be integers, got {a!r}")
        coeffs = tuple(int(a) for a in coeffs)
        if coeffs[-1] < 1:
            raise ValueError(f"leading coefficient must be >= 1, got {coeffs[-1]}")
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    @property
    def lead(self) -> int:
        return self.coeffs[-1]

    @classmethod
    def monomial(cls, k: int, lead: int = 1) -> "IntPolynomial":
        return cls((0,) * (k - 1) + (lead,))

    @classmethod
    def from_text(cls, text: str) -> "IntPolynomial":
        """Parse ``"a1,a2,...,ak"`` (low degree first)."""
        if not isinstance(text, str):
            raise ConfigError(f"polynomial must be given as text 'a1,...,ak', got {text!r}")
        try:
            coeffs = [int(tok) for tok in text.replace(" ", "").split(",")]
        except ValueError:
            raise ConfigError(f"cannot parse polynomial {text!r}; expected 'a1,a2,...,ak'")
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        try:
            return cls(tuple(coeffs))
        except ValueError as exc:
            raise ConfigError(f"invalid polynomial {text!r}: {exc}")

    def to_text(self) -> str:
        return ",".join(str(a) for a in self.coeffs)

    def __str__(self):
        terms = []
        for h, a in enumerate(self.coeffs, start=1):
            if a == 0:
                continue
            mono = "n" if h == 1 else f"n^{h}"
            terms.append(mono if a == 1 else f"{a}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def __call__(self, n):
        return eval(self, n)


def _horner(coeffs: Sequence, x):
    acc = 0
    for a in reversed(coeffs):
        acc = acc * x + a
    return acc * x


def eval(poly, n: int) -> int:
    """Exact value of ``poly`` at the integer ``n``.

    ``poly`` may be an IntPolynomial or a bare coefficient sequence, as
    returned by :func:`eta`.  Python integers never overflow.
    """
    coeffs = poly.coeffs if isinstance(poly, IntPolynomial) else tuple(poly)
    return _horner(coeffs, int(n))


def eval_float(poly, x: float) -> float:
    coeffs = poly.coeffs if isinstance(poly, IntPolynomial) else tuple(poly)
    return float(_horner([float(a) for a in coeffs], float(x)))


def eval_array(poly, ns) -> np.ndarray:
    """Vectorised exact evaluation into int64.

    Raises OverflowError when some value could exceed the int64 range,
    rather than wrapping.
    """
    coeffs = poly.coeffs if isinstance(poly, IntPolynomial) else tuple(poly)
    ns = np.asarray(ns, dtype=np.int64)
    if ns.size == 0:
        return np.zeros(0, dtype=np.int64)
    m = int(np.max(np.abs(ns)))
    bound = sum(abs(a) * m**h for h, a in enumerate(coeffs, start=1))
    if bound > _INT64_MAX:
        raise OverflowError(f"phi values up to {bound} do not fit in int64")
    acc = np.zeros_like(ns)
    for a in reversed(coeffs):
        acc = acc * ns + a
    return acc * ns


def eta(poly: IntPolynomial) -> Tuple[Optional[Tuple[int, ...]], Optional[int]]:
    """Split off the leading monomial: ``eta = phi - lead * n^k``.

    Returns ``(coeffs, d)`` with ``d`` the degree of eta, or
    ``(None, None)`` when ``phi`` is a pure monomial.  eta may have a
    negative leading coefficient, so it is returned as a coefficient tuple.
    """
    low = list(poly.coeffs[:-1])
    while low and low[-1] == 0:
        low.pop()
    if not low:
        return None, None
    return tuple(low), len(low)


def forward_differences(poly: IntPolynomial, n: int) -> list:
    """[phi(n), D phi(n), D^2 phi(n), ..., D^k phi(n)] with D the forward difference."""
    k = poly.degree
    vals = [eval(poly, n + i) for i in range(k + 1)]
    out = [vals[0]]
    for _ in range(k):
        vals = [b - a for a, b in zip(vals, vals[1:])]
        out.append(vals[0])
    return out


def _certified_from(poly: IntPolynomial, n: int, order: int) -> bool:
    """True if D^order phi(m) > 0 for every m >= n.

    Holds when D^order phi(n) > 0 and all higher differences at n are
    nonnegative: the top difference k! * a_k is a positive constant, so
    each lower difference is nondecreasing from n onward.
    """
    diffs = forward_differences(poly, n)
    return diffs[order] > 0 and all(d >= 0 for d in diffs[order + 1:])


def monotone_threshold(poly: IntPolynomial) -> int:
    """Smallest n0 >= 0 with phi(n+1) > phi(n) for all n >= n0."""
    n = 0
    while not _certified_from(poly, n, 1):
        n += 1
    while n > 0 and eval(poly, n) - eval(poly, n - 1) > 0:
        n -= 1
    return n


def convex_from(poly: IntPolynomial, n: int) -> bool:
    """Whether the forward differences of phi are nondecreasing on [n, inf)."""
    if poly.degree == 1:
        return True
    diffs = forward_differences(poly, n)
    return all(d >= 0 for d in diffs[2:])


def inverse_at(poly: IntPolynomial, y: float, rtol: float = 1e-13) -> float:
    """The real x >= n0 with phi(x) = y.

    An integer bracket phi(m) <= y < phi(m+1) is found first with exact
    arithmetic, then refined by bisection inside [m, m+1].  The integer
    step matters near n0, where phi can dip on the reals even though it
    is increasing on the integers.
    """
    n0 = monotone_threshold(poly)
    y0 = eval(poly, n0)
    if y < y0:
        raise DomainError(f"y={y} is below phi(n0)={y0} (n0={n0})")
    lo = n0
    hi = max(n0 + 1, math.ceil((max(y, 0.0) / poly.lead) ** (1.0 / poly.degree)))
    while eval(poly, hi) <= y:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if eval(poly, mid) <= y:
            lo = mid
        else:
            hi = mid
    if eval(poly, lo) == y:
        return float(lo)
    a, b = float(lo), float(hi)
    for _ in range(200):
        mid = 0.5 * (a + b)
        if eval_float(poly, mid) < y:
            a = mid
        else:
            b = mid
        if b - a <= rtol * max(1.0, b):
            break
    return 0.5 * (a + b)


def required_limit(poly: IntPolynomial, y_max: int) -> int:
    """Largest n that can satisfy phi(n) <= y_max, assuming phi(n) >= 1 for n >= 2."""
    n0 = monotone_threshold(poly)
    if y_max < eval(poly, n0):
        return n0
    x = int(math.floor(inverse_at(poly, y_max) + 1e-9))
    while x > n0 and eval(poly, x) > y_max:
        x -= 1
    while eval(poly, x + 1) <= y_max:
        x += 1
    return max(x, n0)
