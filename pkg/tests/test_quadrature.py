import math

import numpy as np
import pytest

from polyrep.errors import NumericToleranceError, PreconditionError
from polyrep.quadrature import QuadratureSpec, integrate


def test_polynomial_exact():
    spec = QuadratureSpec(3)
    # degree 7 is exact for both the 6- and 4-point rules, so the estimate vanishes too
    res = integrate(lambda x: x**7 - 2 * x**3 + 1, -1.0, 2.0, spec)
    assert res.value.real == pytest.approx((2**8 - 1) / 8 - (2**4 - 1) / 2 + 3, rel=1e-14)
    assert res.error < 1e-12
    # degree 9 is exact for the 6-point value; the estimate is that of the 4-point rule
    res = integrate(lambda x: x**9, -1.0, 2.0, spec, raise_on_fail=False)
    assert res.value.real == pytest.approx((2**10 - 1) / 10, rel=1e-14)
    assert res.error > 0


def test_oscillatory_against_closed_form():
    w = 250.0
    spec = QuadratureSpec.for_interval(0, 1, w)
    res = integrate(lambda x: np.exp(2j * np.pi * w * x) * np.exp(-x), 0, 1, spec, raise_on_fail=False)
    c = 2j * np.pi * w - 1
    true_err = abs(res.value - (np.exp(c) - 1) / c)
    assert true_err < 1e-12
    assert true_err <= res.error


def test_panel_sizing_enforced():
    spec = QuadratureSpec.for_interval(0, 1, 100)
    assert spec.panel_count >= 400
    with pytest.raises(PreconditionError):
        integrate(np.cos, 0, 1, QuadratureSpec(10, max_frequency=100))


def test_tolerance_failure_is_raised():
    # sqrt has a singular derivative at 0; one panel cannot meet 1e-14
    spec = QuadratureSpec(1, rel_tol=1e-14)
    with pytest.raises(NumericToleranceError):
        integrate(np.sqrt, 0.0, 1.0, spec)
    res = integrate(np.sqrt, 0.0, 1.0, spec, raise_on_fail=False)
    assert res.error > 1e-14


def test_refinement_stable():
    f = lambda x: np.exp(-3 * x) * np.cos(40 * x)
    spec = QuadratureSpec.for_interval(0, 2, 40 / (2 * math.pi))
    a = integrate(f, 0, 2, spec, raise_on_fail=False)
    b = integrate(f, 0, 2, spec.refined(), raise_on_fail=False)
    assert abs(a.value - b.value) <= max(a.error, 1e-14)
    assert b.error < a.error / 16


def test_empty_interval():
    assert integrate(np.exp, 1.0, 1.0, QuadratureSpec(1)).value == 0
