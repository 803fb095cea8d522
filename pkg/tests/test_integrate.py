"""Quadrature engine checks: panel exactness, error estimates, tail ladder."""

import numpy as np
import pytest

from spaderes.errors import NumericError
from spaderes.integrate import (
    check_converged,
    composite_gauss_legendre,
    integrate_oscillatory_tails,
    integrate_refined,
)


def test_polynomial_exactness():
    # 16-node Gauss-Legendre is exact through degree 31 on each panel
    f = lambda x: 3.0 * x**7 - x**4 + 2.0 * x - 5.0
    got = composite_gauss_legendre(f, -1.0, 3.0, n_panels=3)
    exact = (
        3.0 * (3.0**8 - (-1.0) ** 8) / 8
        - (3.0**5 - (-1.0) ** 5) / 5
        + (3.0**2 - (-1.0) ** 2)
        - 5.0 * 4.0
    )
    assert got == pytest.approx(exact, rel=1e-14)


def test_gaussian_integral():
    value, err = integrate_refined(lambda x: np.exp(-(x**2)), -10.0, 10.0, n_panels=32)
    assert value == pytest.approx(np.sqrt(np.pi), rel=1e-13)
    assert err < 1e-12


def test_error_estimate_is_conservative():
    f = lambda x: np.cos(7.0 * x) * np.exp(-0.3 * x**2)
    value, err = integrate_refined(f, -8.0, 8.0, n_panels=24)
    finer, _ = integrate_refined(f, -8.0, 8.0, n_panels=96)
    assert abs(value - finer) <= max(err, 1e-14)


def test_inverted_interval_rejected():
    with pytest.raises(ValueError):
        composite_gauss_legendre(np.cos, 1.0, 1.0, n_panels=4)


def test_oscillatory_tail_sinc_squared():
    # integral of sinc(x)^2 over the real line = pi; the 1/x^2 tail makes
    # plain truncation at X=200 err at the 1e-3 level, the ladder must not
    f = lambda x: np.sinc(x / np.pi) ** 2
    value, err = integrate_oscillatory_tails(f, half_width=200.0, period=np.pi)
    assert value == pytest.approx(np.pi, abs=1e-12)
    assert err < 1e-6


def test_oscillatory_tail_absolute_convergence():
    f = lambda x: 1.0 / (1.0 + x**2)
    value, _ = integrate_oscillatory_tails(f, half_width=3000.0, period=np.pi)
    assert value == pytest.approx(np.pi, abs=1e-6)


def test_check_converged_passes_and_raises():
    assert check_converged(2.0, 1e-12, 1e-8, 1e-12, "ok") == 2.0
    with pytest.raises(NumericError):
        check_converged(2.0, 1e-3, 1e-8, 1e-12, "bad")
    with pytest.raises(NumericError):
        check_converged(np.nan, 0.0, 1e-8, 1e-12, "nan")
