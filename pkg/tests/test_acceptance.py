"""The ten acceptance criteria, each reported as one PASS/FAIL line."""

import math
import time

import numpy as np
import pytest

from conftest import CRITERIA
from oracles import trial_lambda_list
from polyrep import arcintegral, arcsum, mangoldt, repcount
from polyrep.lab import experiments
from polyrep.lab.config import ExperimentConfig
from polyrep.polyring import IntPolynomial


def verdict(number, title, ok, detail, started):
    line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}: {detail} ({time.perf_counter() - started:.1f}s)"
    CRITERIA.append(line)
    print(line)
    assert ok, line


def test_c01_convolution_matches_brute_force():
    t0 = time.perf_counter()
    polys = ["0,1", "1,1", "0,0,1", "0,1,1", "1,2"]
    worst, cases = 0.0, 0
    for text in polys:
        phi = IntPolynomial.from_text(text)
        k = phi.degree
        for j in (k, k + 1):
            for N in (200, 1000, 5000):
                for H in (20, 100):
                    a = repcount.rep_brute(phi, j, N, H).values
                    b = repcount.rep_convolve(phi, j, N, H).values
                    zero = a == 0
                    if np.any(b[zero] != 0):
                        worst = math.inf
                    rel = np.abs(b[~zero] - a[~zero]) / a[~zero]
                    worst = max(worst, float(rel.max(initial=0.0)))
                    cases += 1
    verdict(1, "convolution vs brute force", worst <= 1e-9, f"{cases} cases, max rel diff {worst:.2e}", t0)


def test_c02_circle_identity():
    t0 = time.perf_counter()
    worst = 0.0
    for text, N, H in (("0,1", 200, 20), ("1,1", 300, 30)):
        phi = IntPolynomial.from_text(text)
        plan = arcsum.plan_truncation(phi, N, 1e-12)
        full = arcintegral.full_circle_sum(phi, 2, N, H, plan)
        ref = repcount.weighted_interval_sum(repcount.rep_brute(phi, 2, N, H))
        worst = max(worst, abs(full - ref) / abs(ref))
    verdict(2, "full-circle identity", worst <= 1e-8, f"max rel error {worst:.2e}", t0)


def test_c03_decomposition_identity():
    t0 = time.perf_counter()
    # B = N^(2 eps) = N^0.05
    cfg = ExperimentConfig(phi="0,1", j=2, epsilon=0.025, h_exponent=0.8)
    rep = experiments.run_decomposition(cfg, 2000)
    rel = rep.summary["relative_residual_decomposition"]
    verdict(3, "decomposition identity", rel <= 1e-6, f"relative residual {rel:.2e}", t0)


@pytest.mark.slow
def test_c04_average_trend():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(phi="0,1", j=2, epsilon=0.05, h_exponent=0.8, n_grid=[10**4, 10**5, 10**6])
    rep = experiments.run_average(cfg)
    ratios = rep.column("ratio")
    devs = rep.column("abs_dev")
    ok = all(0.6 <= r <= 1.6 for r in ratios) and devs[-1] < devs[0]
    verdict(4, "short-interval average trend", ok,
            "ratios " + ", ".join(f"{r:.4f}" for r in ratios), t0)


def test_c05_kernel_integral():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(n_grid=[100], h_exponent=0.8, kernel_mu=[0.5, 1.0, 1.5, 2.0], kernel_x=[0.25, 0.5])
    rep = experiments.run_kernel_check(cfg)
    worst = rep.summary["max_ratio"]
    verdict(5, "kernel integral", len(rep.rows) == 16 and worst <= 10, f"max ratio {worst:.3f}", t0)


def test_c06_damped_power_sum():
    t0 = time.perf_counter()
    worst = 0.0
    for lam in (0.0, 0.5, 1.0):
        for N, H in ((10**4, 10**2), (10**5, 10**3)):
            exact, asym = arcintegral.damped_power_sum(N, H, lam)
            worst = max(worst, abs(exact - asym) / (H**2 * N ** (lam - 1)))
    verdict(6, "damped power sum", worst <= 3, f"max constant {worst:.3f}", t0)


@pytest.mark.slow
def test_c07_scaling_bands():
    t0 = time.perf_counter()
    bands = []
    for text in ("0,1", "1,1"):
        cfg = ExperimentConfig(phi=text, epsilon=0.05, n_grid=[10**4, 3 * 10**4, 10**5], tau_exponents=[-0.7])
        bands.append(experiments.run_l2_scaling(cfg).summary["band"])
        bands.append(experiments.run_tolev_scaling(cfg).summary["band"])
    verdict(7, "scaling-law bands", max(bands) <= 10, "bands " + ", ".join(f"{b:.3f}" for b in bands), t0)


def test_c08_telescope_identity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240501)
    worst = 0.0
    for _ in range(10**4):
        r = rng.uniform(0, 2, 2)
        th = rng.uniform(0, 2 * math.pi, 2)
        x, y = r[0] * complex(math.cos(th[0]), math.sin(th[0])), r[1] * complex(math.cos(th[1]), math.sin(th[1]))
        j = int(rng.integers(2, 11))
        worst = max(worst, arcsum.telescope_residual(x, y, j) / max(abs(x), abs(y)) ** j)
    verdict(8, "telescoping identity", worst <= 1e-10, f"max relative residual {worst:.2e}", t0)


@pytest.mark.slow
def test_c09_leading_coefficient():
    t0 = time.perf_counter()
    cfg = ExperimentConfig(phi="0,4", j=2, epsilon=0.05, h_exponent=0.8, n_grid=[10**5])
    rep = experiments.run_average(cfg)
    ratio = rep.column("ratio")[0]
    k, j, a_k = 2, 2, 4
    without = ratio * a_k ** (-j / k)
    ok = 0.6 <= ratio <= 1.6 and not 0.6 <= without <= 1.6
    verdict(9, "leading coefficient factor", ok, f"ratio {ratio:.4f}, without factor {without:.4f}", t0)


def test_c10_sieve(tmp_path):
    t0 = time.perf_counter()
    lim = 10**5
    table = mangoldt.build(lim)
    oracle = np.array(trial_lambda_list(lim))
    support = np.array_equal(table.lam > 0, oracle > 0)
    err = float(np.max(np.abs(table.lam - oracle)))
    path = tmp_path / "sieve.bin"
    mangoldt.save_cache(table, path)
    back = mangoldt.load_cache(path)
    same = back.lam.tobytes() == table.lam.tobytes() and back.spf.tobytes() == table.spf.tobytes()
    verdict(10, "sieve and cache", support and err <= 1e-12 and same,
            f"support {'exact' if support else 'MISMATCH'}, max diff {err:.1e}, round-trip {'bitwise' if same else 'DIFFERS'}",
            t0)
