import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special as sps

from loglap.special import EULER_GAMMA, digamma, dim_constants, frac_constant, pitt_constant

LN2 = math.log(2.0)


@pytest.mark.parametrize("x, expected", [
    (1.0, -EULER_GAMMA),
    (0.5, -EULER_GAMMA - 2 * LN2),
    (0.25, -EULER_GAMMA - math.pi / 2 - 3 * LN2),
])
def test_digamma_rational_identities(x, expected):
    assert digamma(x) == pytest.approx(expected, rel=1e-13)


@given(st.floats(min_value=1e-3, max_value=1e4))
@settings(max_examples=200, deadline=None)
def test_digamma_matches_mpmath(x):
    ref = float(mpmath.digamma(mpmath.mpf(x)))
    assert digamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-14)


def test_digamma_near_its_root():
    # Psi vanishes near 1.4616; relative error is meaningless there, absolute is not
    x0 = 1.4616321449683623
    assert abs(digamma(x0)) < 1e-14
    assert digamma(x0 - 1e-3) < 0 < digamma(x0 + 1e-3)


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_digamma_domain(x):
    with pytest.raises(ValueError):
        digamma(x)


def test_dim_constants_one_dimension():
    c = dim_constants(1)
    assert c.c_N == pytest.approx(1.0, rel=1e-15)
    assert c.rho_N == pytest.approx(-2 * EULER_GAMMA, rel=1e-14)
    assert c.hardy_c == pytest.approx(-EULER_GAMMA - math.pi / 2 - 2 * LN2, rel=1e-14)
    # the commonly quoted -3.53430919 is off in the seventh digit
    assert c.hardy_c == pytest.approx(-3.5343063528, abs=1e-9)


def test_dim_constants_two_dimensions():
    c = dim_constants(2)
    assert c.c_N == pytest.approx(1 / math.pi, rel=1e-15)
    assert c.rho_N == pytest.approx(2 * LN2 - 2 * EULER_GAMMA, rel=1e-14)


@pytest.mark.parametrize("N", [1, 2, 3, 4, 7])
def test_dim_constants_against_scipy(N):
    c = dim_constants(N)
    assert c.c_N == pytest.approx(math.pi ** (-N / 2) * math.gamma(N / 2), rel=1e-14)
    assert c.rho_N == pytest.approx(2 * LN2 + sps.digamma(N / 2) - EULER_GAMMA, rel=1e-12, abs=1e-14)
    assert c.hardy_c == pytest.approx(LN2 + sps.digamma(N / 4), rel=1e-12)


def test_dim_constants_domain():
    with pytest.raises(ValueError):
        dim_constants(0)


def test_frac_constant_values():
    assert frac_constant(1, 0.5) == pytest.approx(1 / math.pi, rel=1e-14)
    assert frac_constant(1, 1e-6) == pytest.approx(1e-6 * dim_constants(1).c_N, rel=1e-4)
    v = frac_constant(2, 0.25)
    assert 0 < v < math.inf


@pytest.mark.parametrize("N", [1, 2, 3])
def test_frac_constant_log_derivative_is_rho(N):
    # d/ds ln(c_{N,s}/s) at s=0 equals rho_N: the zero-order term of the expansion
    eps = 1e-5
    g = lambda s: math.log(frac_constant(N, s) / s)  # noqa: E731
    slope = (g(2 * eps) - g(eps)) / eps
    assert slope == pytest.approx(dim_constants(N).rho_N, abs=1e-4)


@pytest.mark.parametrize("s", [0.0, 1.0, -0.1, 1.5])
def test_frac_constant_domain(s):
    with pytest.raises(ValueError):
        frac_constant(1, s)


def test_pitt_constant_limits():
    assert pitt_constant(1, 1e-9) == pytest.approx(1.0, abs=1e-7)
    # first-order term of the Pitt constant is 2 (ln 2 + Psi(N/4))
    s = 1e-6
    assert (pitt_constant(1, s) - 1) / s == pytest.approx(2 * dim_constants(1).hardy_c, rel=1e-4)
    ref = 2 ** 0.5 * sps.gamma(0.375) ** 2 / sps.gamma(0.125) ** 2
    assert pitt_constant(1, 0.25) == pytest.approx(ref, rel=1e-13)
    assert np.isfinite(pitt_constant(3, 0.4))
