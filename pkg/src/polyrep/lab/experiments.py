"""
The named experiments.  Each returns a :class:`Report`: a table of rows
plus a small summary dict, written as CSV (17 significant digits) and
optionally JSON.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, List

from .. import arcintegral, arcsum, mangoldt, polyring, repcount
from ..errors import ConfigError, PolyrepError
from ..quadrature import QuadratureSpec
from .config import ExperimentConfig

log = logging.getLogger(__name__)


@dataclass
class Report:
    name: str
    columns: List[str]
    rows: List[list] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([_fmt(v) for v in row])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({"name": self.name, "columns": self.columns, "rows": self.rows,
                           "summary": self.summary}, indent=2, sort_keys=True)

    def write(self, out_dir, as_json: bool = False) -> List[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        paths = [out / f"{self.name}.csv"]
        paths[0].write_text(self.to_csv())
        if as_json:
            paths.append(out / f"{self.name}.json")
            paths[1].write_text(self.to_json())
        return paths

    @classmethod
    def from_csv(cls, path) -> "Report":
        path = Path(path)
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            try:
                columns = next(reader)
            except StopIteration:
                return cls(path.stem, [])
            rows = [[_parse(v) for v in row] for row in reader if row]
        return cls(path.stem, columns, rows)


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return v


def _parse(v: str):
    for conv in (int, float):
        try:
            return conv(v)
        except ValueError:
            pass
    return v


def _table_for(config: ExperimentConfig, top: int):
    limit = polyring.required_limit(config.poly, top)
    return mangoldt.load_or_build(max(limit, 2), config.sieve_cache or None)


def _plans(config: ExperimentConfig):
    """Truncation plans per N and one Mangoldt table covering all of them."""
    plans = {N: arcsum.plan_truncation(config.poly, N, config.truncation_tol) for N in config.n_grid}
    radius = max((p.radius for p in plans.values()), default=2)
    return plans, mangoldt.load_or_build(radius, config.sieve_cache or None)


def _map_over_n(config: ExperimentConfig, fn: Callable, ns) -> list:
    """Apply fn to each N on a thread pool; results keep the order of ns."""

    def tagged(N):
        log.info("running N=%d", N)
        try:
            return fn(N)
        except PolyrepError as exc:
            raise type(exc)(f"N={N}: {exc}") from exc

    threads = config.effective_threads()
    if threads == 1 or len(ns) < 2:
        return [tagged(N) for N in ns]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(tagged, ns))


def _spec(config, a, b, freq):
    return QuadratureSpec.for_interval(a, b, freq, abs_tol=config.abs_tol, rel_tol=config.rel_tol)


def run_average(config: ExperimentConfig) -> Report:
    """Short-interval sums of R against the predicted main term, per N."""
    config.require_theorem_range()
    phi, j, k = config.poly, config.j, config.k
    report = Report("average", ["N", "H", "interval_sum", "main_term", "ratio", "abs_dev", "A_ref"])
    if not config.n_grid:
        report.summary = {"verdict": "empty"}
        return report
    table = _table_for(config, max(N + config.H(N) for N in config.n_grid))

    def one(N):
        H = config.H(N)
        total = repcount.interval_sum(repcount.rep_convolve(phi, j, N, H, table))
        main = arcsum.main_term(N, H, j, k, phi.lead)
        ratio = total / main
        return [N, H, total, main, ratio, abs(ratio - 1), arcsum.a_factor(N, -1.0)]

    report.rows = _map_over_n(config, one, config.n_grid)
    devs = report.column("abs_dev")
    improving = len(devs) > 1 and devs[-1] < devs[0]
    report.summary = {
        "verdict": "improving" if improving else ("single" if len(devs) == 1 else "not improving"),
        "ratio_min": min(report.column("ratio")),
        "ratio_max": max(report.column("ratio")),
    }
    return report


def run_decomposition(config: ExperimentConfig, N: int) -> Report:
    """gamma_k^j I1 + I2 + I3 against the full-circle integral and the exact damped sum."""
    phi, j, k, a_k = config.poly, config.j, config.k, config.poly.lead
    H = config.H(N)
    B = N**config.b_exponent
    tau = B / H
    if not 0 < tau < 0.5:
        raise ConfigError(f"tau = B/H = {tau:.4g} must lie in (0, 1/2)")
    plan = arcsum.plan_truncation(phi, N, config.truncation_tol)
    table = mangoldt.load_or_build(max(plan.radius, polyring.required_limit(phi, N + H)),
                                   config.sieve_cache or None)
    S = arcsum.ExponentialSum.build(phi, phi, N, plan, table)
    freq = j * S.bandwidth + N + H
    gj = arcsum.gamma_const(k) ** j
    v1, companion = arcintegral.i1(N, H, j, k, a_k, tau,
                                   _spec(config, 0, tau, N + H + arcintegral.z_bandwidth(N)))
    v2 = arcintegral.i2(phi, j, N, H, tau, plan, _spec(config, 0, tau, freq), table)
    v3 = arcintegral.i3(phi, j, N, H, tau, plan, _spec(config, tau, 0.5, freq), table)
    full = arcintegral.full_circle_sum(phi, j, N, H, plan, table=table)
    weighted = repcount.weighted_interval_sum(repcount.rep_convolve(phi, j, N, H, table))
    total = gj * v1 + v2 + v3
    final_main = math.exp(-1) * arcsum.main_term(N, H, j, k, a_k)
    rows = [
        ("N", N), ("H", H), ("B", B), ("tau", tau), ("radius", plan.radius),
        ("gamma_j_I1", (gj * v1).real), ("I2", v2.real), ("I3", v3.real),
        ("sum_I", total.real), ("full_circle", full), ("weighted_sum", weighted),
        ("gamma_j_I1_companion", gj * companion), ("damped_main_term", final_main),
        ("residual_decomposition", abs(total - full)), ("residual_circle", abs(full - weighted)),
    ]
    report = Report("decomposition", ["quantity", "value"], [list(r) for r in rows])
    report.summary = {
        "relative_residual_decomposition": abs(total - full) / abs(full),
        "relative_residual_circle": abs(full - weighted) / abs(weighted),
    }
    return report


def run_l2_scaling(config: ExperimentConfig) -> Report:
    """Mean-square error of the major-arc model over |alpha| <= xi, against N^(2/k - 1)."""
    phi, k = config.poly, config.k
    report = Report("l2_scaling", ["N", "xi", "measured", "bound_shape", "ratio"])

    plans, table = _plans(config)

    def one(N):
        xi = N ** (-1 + 13 / (15 * k) - config.epsilon)
        plan = plans[N]
        spec = _spec(config, 0, xi, plan_bandwidth(phi, plan))
        value = arcintegral.l2_error_integral(phi, N, xi, plan, spec, table)
        shape = N ** (2 / k - 1)
        return [N, xi, value, shape, value / shape]

    report.rows = _map_over_n(config, one, config.n_grid)
    report.summary = _band(report.column("ratio"))
    return report


def plan_bandwidth(phi, plan) -> int:
    """Largest |phi(n)| for n <= R: a frequency bound for the truncated sum."""
    return max(abs(polyring.eval(phi, n)) for n in range(plan.radius + 1))


def run_tolev_scaling(config: ExperimentConfig) -> Report:
    """F(tau) against (tau N^(1/k) + N^(2/k-1)) log^4 N over the (N, tau) grid."""
    phi, k = config.poly, config.k
    report = Report("tolev_scaling", ["N", "tau", "F", "bound_shape", "ratio"])

    plans, table = _plans(config)

    def one(N):
        plan = plans[N]
        rows = []
        for e in config.tau_exponents:
            tau = N**e
            spec = _spec(config, 0, tau, plan_bandwidth(phi, plan))
            F = arcintegral.tolev_F(phi, N, tau, plan, spec, table)
            shape = (tau * N ** (1 / k) + N ** (2 / k - 1)) * math.log(N) ** 4
            rows.append([N, tau, F, shape, F / shape])
        return rows

    report.rows = [row for rows in _map_over_n(config, one, config.n_grid) for row in rows]
    report.summary = _band(report.column("ratio"))
    return report


def run_kernel_check(config: ExperimentConfig) -> Report:
    """|int z^(-mu) e(-n alpha) - main| against 1/(n X^mu) for n in {N, N+H}."""
    report = Report("kernel_check", ["N", "mu", "n", "X", "integral_re", "integral_im", "main",
                                     "abs_diff", "bound_shape", "ratio"])

    def one(N):
        rows = []
        for mu in config.kernel_mu:
            for n in (N, N + config.H(N)):
                for X in config.kernel_x:
                    spec = _spec(config, -X, X, n + arcintegral.z_bandwidth(N))
                    kv = arcintegral.kernel_integral(N, mu, n, X, spec)
                    diff = abs(kv.integral - kv.main)
                    shape = 1.0 / (n * X**mu)
                    rows.append([N, mu, n, X, kv.integral.real, kv.integral.imag, kv.main, diff,
                                 shape, diff / shape])
        return rows

    report.rows = [row for rows in _map_over_n(config, one, config.n_grid) for row in rows]
    ratios = report.column("ratio")
    report.summary = {"max_ratio": max(ratios) if ratios else None}
    return report


def _band(ratios) -> dict:
    if not ratios:
        return {"band": None}
    lo, hi = min(ratios), max(ratios)
    return {"ratio_min": lo, "ratio_max": hi, "band": hi / lo if lo > 0 else math.inf}
