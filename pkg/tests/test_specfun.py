import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weyl.errors import PoleError, RangeError
from weyl.specfun import bessel_j, cpow, gamma, sqrt_upper, upper_power


def test_gamma_half():
    assert abs(gamma(0.5) - math.sqrt(math.pi)) < 1e-13


def test_gamma_one():
    assert abs(gamma(1.0) - 1.0) < 1e-13


def test_gamma_recurrence_oracle():
    # Gamma(7/4) = (3/4) Gamma(3/4)
    assert abs(gamma(1.75) - 0.75 * gamma(0.75)) < 1e-12 * gamma(1.75)


def test_gamma_recurrence_grid():
    x = 0.1
    while x < 20.0:
        assert abs(gamma(x + 1.0) - x * gamma(x)) <= 1e-11 * abs(gamma(x + 1.0))
        x += 0.37


def test_gamma_pole_and_range():
    with pytest.raises(PoleError):
        gamma(-3.0)
    with pytest.raises(RangeError):
        gamma(60.0)


def test_bessel_half_order_closed_form():
    # J_{1/2}(x) = sqrt(2/(pi x)) sin x; at x = pi/2 this is 2/pi
    v = bessel_j(0.5, math.pi / 2)
    assert abs(v - 2.0 / math.pi) < 1e-14


def test_bessel_real_for_positive_argument():
    for x in (0.3, 1.7, 5.0, 11.0):
        v = bessel_j(0.5, x)
        assert abs(v.imag) < 1e-16 * max(1.0, abs(v))


def test_bessel_leading_term_negative_order():
    beta = 0.75
    for z in (1e-3, 1e-3 + 1e-3j, 1e-4j):
        val = bessel_j(-beta, z) * gamma(1.0 - beta) * cpow(0.5 * z, beta)
        assert abs(val - 1.0) < 1e-3


def test_bessel_range_error():
    with pytest.raises(RangeError):
        bessel_j(0.5, 45.0)
    with pytest.raises(RangeError):
        bessel_j(1.5, 1.0)


def test_bessel_ode_residual():
    # z^2 J'' + z J' + (z^2 - nu^2) J = 0 via centered differences
    h = 3e-4
    for nu in (0.6, -0.75, 0.3):
        for z in (0.5, 1.3, 2.6, 0.8 + 0.9j, 2.2 - 0.7j):
            j0 = bessel_j(nu, z)
            jp = (bessel_j(nu, z + h) - bessel_j(nu, z - h)) / (2 * h)
            jpp = (bessel_j(nu, z + h) - 2 * j0 + bessel_j(nu, z - h)) / (h * h)
            resid = z * z * jpp + z * jp + (z * z - nu * nu) * j0
            assert abs(resid) <= 1e-6 * max(abs(j0), 0.05)


def test_sqrt_upper_examples():
    assert sqrt_upper(-4) == 2j
    w = sqrt_upper(-1)
    assert abs(w * w + 1) < 1e-15 and w.imag == 1.0
    assert sqrt_upper(4.0) == 2.0


def test_cpow_principal_branch():
    v = cpow(-1, 0.75)
    ref = cmath.exp(1j * 3 * math.pi / 4)
    assert abs(v - ref) < 1e-14
    with pytest.raises(PoleError):
        cpow(0, 0.5)


def test_sqrt_upper_branch_rule_bulk():
    rng = random.Random(9)
    for _ in range(10_000):
        z = complex(rng.uniform(-50, 50), rng.uniform(-50, 50))
        w = sqrt_upper(z)
        assert w.imag >= 0.0
        assert abs(w * w - z) <= 1e-12 * max(1.0, abs(z))
        wc = sqrt_upper(z).conjugate()
        assert abs(wc * wc - z.conjugate()) <= 1e-12 * max(1.0, abs(z))


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from([0.55, 0.75, 0.95]),
    st.floats(min_value=-30, max_value=30),
    st.floats(min_value=0.01, max_value=30),
)
def test_cpow_sector_property(beta, x, y):
    # for z in the upper half-plane, z^beta stays in the sector arg in (0, beta*pi)
    z = complex(x, y)
    w = cpow(z, beta)
    arg = cmath.phase(w)
    assert -1e-12 <= arg <= beta * math.pi + 1e-12


def test_upper_power_cut_along_positive_axis():
    beta = 0.7
    # arg z in (0, 2 pi): the negative axis carries phase exp(i beta pi) ...
    v = upper_power(-2.0, beta)
    ref = 2.0**beta * cmath.exp(1j * beta * math.pi)
    assert abs(v - ref) < 1e-13
    # ... and crossing the cut twists by exp(2 i beta pi)
    z = 1.5 + 0.8j
    lhs = upper_power(z.conjugate(), beta)
    rhs = upper_power(z, beta).conjugate() * cmath.exp(2j * beta * math.pi)
    assert abs(lhs - rhs) < 1e-13
