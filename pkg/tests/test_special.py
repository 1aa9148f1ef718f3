import math

import numpy as np
import pytest
from scipy.integrate import quad

from dmnkit.special import EULER_GAMMA, exp_integral_minus_j, sine_cosine_integrals, sine_integral


def si_oracle(x):
    return quad(lambda t: math.sin(t) / t if t else 1.0, 0, x, limit=500, epsabs=1e-13, epsrel=1e-13)[0]


def ci_oracle(x):
    # Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt
    val = quad(lambda t: (math.cos(t) - 1) / t if t else 0.0, 0, x, limit=500, epsabs=1e-13, epsrel=1e-13)[0]
    return EULER_GAMMA + math.log(x) + val


def ci_series(x, terms=40):
    s = sum((-(x * x)) ** k / (2 * k * math.factorial(2 * k)) for k in range(1, terms))
    return EULER_GAMMA + math.log(x) + s


def test_si_zero():
    assert sine_integral(0.0) == 0.0


def test_si_pi():
    assert sine_cosine_integrals(math.pi)[0] == pytest.approx(1.8519370, abs=1e-7)


def test_ci_one_against_series_and_quadrature():
    ci = sine_cosine_integrals(1.0)[1]
    assert ci == pytest.approx(0.3374039, abs=1e-7)
    assert ci == pytest.approx(ci_series(1.0), abs=1e-13)
    assert ci == pytest.approx(ci_oracle(1.0), abs=1e-12)


def test_log_grid_against_quadrature():
    xs = np.geomspace(1e-3, 100, 1000)
    si, ci = sine_cosine_integrals(xs)
    # quadrature is slow; check every 10th point plus both ends
    idx = list(range(0, 1000, 10)) + [999]
    err_si = max(abs(si[i] - si_oracle(xs[i])) for i in idx)
    err_ci = max(abs(ci[i] - ci_oracle(xs[i])) for i in idx)
    assert err_si < 1e-10
    assert err_ci < 1e-10


@pytest.mark.parametrize("x", [0.0, -1.0])
def test_ci_domain(x):
    with pytest.raises(ValueError, match="undefined"):
        sine_cosine_integrals(x)


def test_si_is_odd():
    assert sine_integral(-2.5) == pytest.approx(-sine_integral(2.5))


def test_exp_integral_combination():
    si, ci = sine_cosine_integrals(2.0)
    assert exp_integral_minus_j(2.0) == complex(ci, -si)


def test_large_argument_limits():
    si, ci = sine_cosine_integrals(1e6)
    assert si == pytest.approx(math.pi / 2, abs=2e-6)
    assert abs(ci) < 2e-6
