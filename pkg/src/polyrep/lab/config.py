"""Experiment configuration: a TOML file with [experiment], [numerics] and [paths]."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Tuple

try:
    import tomllib
except ImportError:  # Python < 3.11
    import tomli as tomllib
import tomli_w

from ..errors import ConfigError
from ..polyring import IntPolynomial

_SECTIONS = {
    "experiment": ("phi", "j", "epsilon", "n_grid", "h_exponent"),
    "numerics": ("truncation_tol", "abs_tol", "rel_tol", "threads", "tau_exponents", "kernel_mu", "kernel_x"),
    "paths": ("sieve_cache", "out_dir"),
}


def admissible_h_window(N: float, k: int, epsilon: float) -> Tuple[float, float]:
    """(N^(1 - 13/(15k) + eps), N^(1 - eps)): the range of H the asymptotic covers."""
    if N < 16:
        raise ConfigError(f"N must be >= 16, got {N}")
    lo, hi = theta_bounds(k, epsilon)
    return N**lo, N**hi


def theta_bounds(k: int, epsilon: float) -> Tuple[float, float]:
    """Exponent form of the window: H = N^theta needs theta strictly inside these."""
    if k < 2:
        raise ConfigError(f"the H window needs k >= 2, got {k}")
    if not 0 < epsilon < 13 / (30 * k):
        raise ConfigError(
            f"epsilon={epsilon} leaves an empty H window for k={k}; need 0 < epsilon < 13/(30k) = {13 / (30 * k):.6g}"
        )
    return 1 - 13 / (15 * k) + epsilon, 1 - epsilon


@dataclass
class ExperimentConfig:
    phi: str = "0,1"
    j: int = 2
    epsilon: float = 0.05
    n_grid: List[int] = field(default_factory=lambda: [10**4, 10**5, 10**6])
    h_exponent: float = 0.8
    truncation_tol: float = 1e-12
    abs_tol: float = 0.0
    rel_tol: float = 1e-8
    threads: int = 1
    tau_exponents: List[float] = field(default_factory=lambda: [-0.7])
    kernel_mu: List[float] = field(default_factory=lambda: [0.5, 1.0, 1.5, 2.0])
    kernel_x: List[float] = field(default_factory=lambda: [0.25, 0.5])
    sieve_cache: str = ""
    out_dir: str = "out"

    def __post_init__(self):
        self.validate()

    @property
    def poly(self) -> IntPolynomial:
        return IntPolynomial.from_text(self.phi)

    @property
    def k(self) -> int:
        return self.poly.degree

    @property
    def b_exponent(self) -> float:
        """B = N^(2 eps)."""
        return 2 * self.epsilon

    def H(self, N: int) -> int:
        return max(1, round(N**self.h_exponent))

    def effective_threads(self) -> int:
        env = os.environ.get("POLYREP_THREADS")
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise ConfigError(f"POLYREP_THREADS must be an integer, got {env!r}")
        return max(1, self.threads)

    def validate(self):
        poly = self.poly
        self.phi = poly.to_text()
        self.n_grid = [int(n) for n in self.n_grid]
        if self.j < 1:
            raise ConfigError(f"j must be >= 1, got {self.j}")
        if not 0 < self.epsilon < 0.25:
            raise ConfigError(f"epsilon must lie in (0, 1/4), got {self.epsilon}")
        if any(n < 16 for n in self.n_grid):
            raise ConfigError(f"every N must be >= 16, got {self.n_grid}")
        if self.truncation_tol <= 0:
            raise ConfigError("truncation_tol must be positive")
        if poly.degree >= 2:
            lo, hi = theta_bounds(poly.degree, self.epsilon)
            if not lo < self.h_exponent < hi:
                raise ConfigError(
                    f"h_exponent={self.h_exponent} outside the admissible window ({lo:.6g}, {hi:.6g}) "
                    f"for k={poly.degree}, epsilon={self.epsilon}"
                )

    def require_theorem_range(self):
        if not self.j >= self.k >= 2:
            raise ConfigError(f"the average experiment needs j >= k >= 2, got j={self.j}, k={self.k}")

    def to_dict(self) -> dict:
        flat = dataclasses.asdict(self)
        return {sec: {key: flat[key] for key in keys} for sec, keys in _SECTIONS.items()}

    def to_toml(self) -> str:
        return tomli_w.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        flat = {}
        known = {key: sec for sec, keys in _SECTIONS.items() for key in keys}
        for sec, body in data.items():
            if sec not in _SECTIONS or not isinstance(body, dict):
                raise ConfigError(f"unknown config section [{sec}]")
            for key, value in body.items():
                if known.get(key) != sec:
                    raise ConfigError(f"unknown key {key!r} in [{sec}]")
                flat[key] = value
        try:
            return cls(**flat)
        except TypeError as exc:
            raise ConfigError(str(exc))

    @classmethod
    def from_toml(cls, text: str) -> "ExperimentConfig":
        try:
            return cls.from_dict(tomllib.loads(text))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"cannot parse config: {exc}")

    @classmethod
    def load(cls, path) -> "ExperimentConfig":
        try:
            text = Path(path).read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}")
        return cls.from_toml(text)

    def save(self, path):
        Path(path).write_text(self.to_toml())

    def replace(self, **changes) -> "ExperimentConfig":
        changes = {k: v for k, v in changes.items() if v is not None}
        return dataclasses.replace(self, **changes)

