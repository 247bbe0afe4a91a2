import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import long_sum, trial_lambda
from polyrep import arcsum, polyring
from polyrep.errors import DomainError, PreconditionError
from polyrep.polyring import IntPolynomial

SQ = IntPolynomial((0, 1))
SQ_LIN = IntPolynomial((1, 1))
CUBE = IntPolynomial((0, 0, 1))


def test_gamma_closed_forms():
    assert arcsum.gamma_const(1) == 1.0
    assert arcsum.gamma_kj(2, 2) == 1.0
    assert arcsum.gamma_const(2) == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    # Gamma(1/2) = sqrt(pi), Gamma(3/2) = sqrt(pi)/2, Gamma(5/2) = 3 sqrt(pi)/4
    assert arcsum.gamma_kj(2, 1) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert arcsum.gamma_kj(2, 5) == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-14)
    assert arcsum.gamma_kj(3, 6) == 1.0


def test_u_sum_examples():
    assert arcsum.u_sum(0.0, 7) == 7
    assert abs(arcsum.u_sum(0.5, 2)) < 1e-15
    assert abs(arcsum.u_sum(1 / 3, 3)) < 1e-14
    with pytest.raises(PreconditionError):
        arcsum.u_sum(0.1, 0)


@settings(max_examples=200, deadline=None)
@given(alpha=st.floats(-3, 3, allow_nan=False), H=st.integers(1, 300))
def test_u_sum_matches_direct_and_bound(alpha, H):
    direct = sum(cmath.exp(2j * math.pi * m * alpha) for m in range(1, H + 1))
    got = arcsum.u_sum(alpha, H)
    assert abs(got - direct) <= 1e-9 * H
    dist = abs(alpha - round(alpha))
    bound = H if dist == 0 else min(H, 1 / (2 * dist))
    assert abs(got) <= bound * (1 + 1e-12) + 1e-12


def test_a_factor():
    assert arcsum.a_factor(100, 0) == 1.0
    assert arcsum.a_factor(1e6, -2.5) == pytest.approx(1 / arcsum.a_factor(1e6, 2.5), rel=1e-15)
    L = np.log(np.float64(1e6))
    other = float(np.exp(np.cbrt(L / np.log(L))))
    assert arcsum.a_factor(1e6, 1) == pytest.approx(other, rel=1e-12)
    with pytest.raises(DomainError):
        arcsum.a_factor(15, 1)


def test_main_term():
    assert arcsum.main_term(1e5, 100, 2, 2) == pytest.approx(math.pi / 4 * 100, rel=1e-14)
    assert arcsum.main_term(1e3, 100, 3, 3) == pytest.approx(arcsum.main_term(1e7, 100, 3, 3), rel=1e-14)
    assert arcsum.main_term(1e5, 100, 2, 2, a_k=4) == pytest.approx(math.pi / 16 * 100, rel=1e-14)


def test_major_approx():
    assert arcsum.major_approx(1, 1, 50, 0.0) == pytest.approx(50)
    N = 10**4
    assert arcsum.major_approx(2, 1, N, 0.0) == pytest.approx(math.sqrt(math.pi) / 2 * 100, rel=1e-14)
    assert arcsum.major_approx(2, 4, N, 0.0) == pytest.approx(arcsum.major_approx(2, 1, N, 0.0) / 2, rel=1e-14)
    # principal branch: argument stays within (-pi/(2k), pi/(2k))
    v = arcsum.major_approx(3, 1, N, np.linspace(-0.5, 0.5, 101))
    assert np.all(np.abs(np.angle(v)) < math.pi / 6 + 1e-12)


def test_arc_point():
    p = arcsum.ArcPoint(0.25, 8)
    assert p.z == complex(0.125, -math.pi / 2)
    assert p.z.real > 0


@pytest.mark.parametrize("phi,N", [(SQ, 10**4), (CUBE, 10**3), (SQ_LIN, 400), (IntPolynomial((1, 0, 2)), 2000)])
def test_tail_certified_by_direct_summation(phi, N):
    plan = arcsum.plan_truncation(phi, N, 1e-12)
    assert plan.radius >= math.ceil(N ** (1 / phi.degree))
    R = plan.radius
    tail = math.fsum(trial_lambda(n) * math.exp(-polyring.eval(phi, n) / N) for n in range(R + 1, 11 * R + 1))
    assert tail <= plan.tail_bound <= 1e-12


def test_plan_monotone_in_tol():
    assert arcsum.plan_truncation(SQ, 10**4, 1e-3).radius <= arcsum.plan_truncation(SQ, 10**4, 1e-12).radius
    with pytest.raises(ValueError):
        arcsum.plan_truncation(SQ, 100, 0)


def test_s_tilde_at_zero():
    N = 10**4
    v = arcsum.s_tilde_phi(SQ, N, 0.0)
    assert v.imag == 0 and v.real > 0
    assert 0.5 <= v.real / math.sqrt(N) <= 1.5
    alphas = np.linspace(-0.5, 0.5, 2001)
    assert np.all(np.abs(arcsum.s_tilde_phi(SQ, N, alphas)) <= v.real * (1 + 1e-12))


def test_s_tilde_k_long_sum_oracle():
    got = arcsum.s_tilde_k(2, 400, 0.1)
    sq = lambda n: n * n
    ref = long_sum(sq, sq, 400, 0.1, 10**4)
    assert abs(got - ref) <= 1e-10
    assert got == arcsum.s_tilde_phi(SQ, 400, 0.1)
    assert arcsum.s_tilde_k(2, 400, 0.0).imag == 0


def test_s_tilde_k_phi_long_sum_oracle():
    plan = arcsum.plan_truncation(SQ, 400)
    got = arcsum.s_tilde_k_phi(SQ_LIN, 400, 0.07, plan)
    ref = long_sum(lambda n: n * n + n, lambda n: n * n, 400, 0.07, 10**4)
    assert abs(got - ref) <= 1e-10
    assert arcsum.s_tilde_k_phi(SQ, 400, 0.07, plan) == arcsum.s_tilde_k(2, 400, 0.07, plan)
    assert arcsum.s_tilde_k_phi(SQ_LIN, 400, 0.0, plan) == pytest.approx(arcsum.s_tilde_k(2, 400, 0.0, plan), rel=1e-15)


def test_periodicity():
    S = arcsum.ExponentialSum.build(SQ_LIN, SQ_LIN, 10**4)
    # dyadic alphas so that alpha + 1 is formed without rounding
    a = np.random.default_rng(1).integers(-2**19, 2**19, 200) / 2.0**20
    assert np.max(np.abs(S(a + 1) - S(a))) <= 1e-12 * abs(S(0.0))


def test_conjugate_symmetry():
    S = arcsum.ExponentialSum.build(CUBE, CUBE, 10**4)
    a = np.random.default_rng(2).uniform(0, 0.5, 100)
    assert np.allclose(S(-a), np.conj(S(a)), rtol=0, atol=1e-12 * abs(S(0.0)))


def test_phase_compensation_is_exact():
    rng = np.random.default_rng(3)
    f = rng.integers(10**9, 10**15, 200)
    a = rng.uniform(-0.5, 0.5, 7)
    got = arcsum.unit_phase(f, a)
    for i, ai in enumerate(a):
        for jx, fj in enumerate(f):
            exact = Fraction(float(ai)) * int(fj)
            exact -= round(exact)
            d = abs(got[i, jx] - float(exact))
            assert min(d, 1 - d) <= 1e-12


def test_trivial_bound_constant():
    # max |S~|/N^(1/k) over an alpha grid approaches gamma_k from below
    for phi in (SQ, SQ_LIN, CUBE):
        k = phi.degree
        for N in (10**3, 10**4, 10**5):
            S = arcsum.ExponentialSum.build(phi, phi, N)
            m = np.abs(S(np.linspace(-0.5, 0.5, 4001))).max() / N ** (1 / k)
            assert m <= 1.1 * arcsum.gamma_const(k)


def test_grid_eval():
    N = 2000
    S = arcsum.ExponentialSum.build(SQ_LIN, SQ_LIN, N)
    M = 1 << S.bandwidth.bit_length()
    g = arcsum.grid_eval(SQ_LIN, N, M)
    assert g[0] == pytest.approx(S(0.0), rel=1e-13)
    m = np.random.default_rng(4).integers(1, M, 50)
    assert np.max(np.abs(g[m] - S(m / M))) <= 1e-10
    assert np.allclose(g[M - m], np.conj(g[m]), rtol=0, atol=1e-10)
    with pytest.raises(PreconditionError):
        arcsum.grid_eval(SQ_LIN, N, S.bandwidth)


def test_table_too_small():
    from polyrep import mangoldt
    with pytest.raises(PreconditionError):
        arcsum.s_tilde_phi(SQ, 10**4, 0.1, table=mangoldt.build(50))


def test_telescope():
    assert arcsum.telescope_residual(1.5 + 2j, 1.5 + 2j, 5) == 0.0
    x, y = 1.25 - 0.5j, -0.75 + 1j
    assert arcsum.telescope_residual(x, y, 2) <= 1e-12 * (abs(x) + abs(y)) ** 2
    with pytest.raises(PreconditionError):
        arcsum.telescope_residual(x, y, 1)


@settings(max_examples=300, deadline=None)
@given(xr=st.floats(-1.4, 1.4), xi=st.floats(-1.4, 1.4), yr=st.floats(-1.4, 1.4), yi=st.floats(-1.4, 1.4),
       j=st.integers(2, 10))
def test_telescope_property(xr, xi, yr, yi, j):
    x, y = complex(xr, xi), complex(yr, yi)
    scale = max(abs(x), abs(y), 1e-300) ** j
    assert arcsum.telescope_residual(x, y, j) <= 1e-10 * scale
