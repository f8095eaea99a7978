import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gevrey_pdo.gevrey import (EmbeddingRangeError, GevreyParams, WeightOverflowError, check_weight,
                               dominating_scale, embedding_constant, finite_difference, fourier_gevrey_norm,
                               polylog_series, sobolev_norm, spatial_gevrey_seminorm, spectral_derivative,
                               stirling_constant, verify_embedding)
from gevrey_pdo.grid import SampledFunction, make_grid
from gevrey_pdo.symbols import gevrey_bump


@pytest.mark.parametrize("p,y", [(1.25, 0.3), (2.5, 0.75), (4.0, 0.9), (0.0, 0.5)])
def test_series_against_polylog(p, y):
    total, tail = polylog_series(p, y)
    ref = 1 + float(mpmath.polylog(-p, y))
    assert total == pytest.approx(ref, rel=1e-10)
    assert tail <= 1e-12 * total


def test_embedding_constant_closed_form():
    s, R, tau = 2.0, 1.5, 0.7
    y = tau * R ** 0.5 / 2
    series = 1 + mpmath.nsum(lambda n: n ** 2.5 * y**n, [1, mpmath.inf])
    ref = math.exp(tau) * stirling_constant(s) * float(series)
    assert embedding_constant(s, R, tau) == pytest.approx(ref, rel=1e-10)


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0])
def test_stirling_constant_dominates(s):
    # m!^s / n! <= c_s sigma^n n^((3s-1)/2) for the integer m closest above n sigma
    c = stirling_constant(s)
    for n in range(1, 400):
        m = math.ceil(n / s)
        lhs = s * math.lgamma(m + 1) - math.lgamma(n + 1)
        rhs = math.log(c) - n * math.log(s) + (3 * s - 1) / 2 * math.log(n)
        assert lhs <= rhs


def test_embedding_range():
    with pytest.raises(EmbeddingRangeError, match="tau < s R"):
        embedding_constant(2.0, 1.0, 2.0)
    with pytest.raises(EmbeddingRangeError):
        GevreyParams(2.0, 1.0, 0.5, 3.0).check_embedding()
    with pytest.raises(EmbeddingRangeError, match="sigma = 1/s"):
        GevreyParams(2.0, 1.0, 0.4, 0.1).check_embedding()


def test_overflow_guard_names_tau_max():
    g = make_grid(1, 64, 1.0)
    with pytest.raises(WeightOverflowError, match="largest admissible"):
        check_weight(g, 1.0, 10.0)


def test_fourier_norm_of_single_mode():
    g = make_grid(1, 32, 2 * np.pi)
    f = SampledFunction.from_function(g, lambda x: np.exp(3j * x[..., 0]))
    expected = math.exp(0.4 * 10 ** 0.25) * math.sqrt(2 * np.pi)
    assert fourier_gevrey_norm(f, 0.5, 0.4) == pytest.approx(expected)
    assert sobolev_norm(f, 2) == pytest.approx(10 * math.sqrt(2 * np.pi))


@settings(max_examples=20, deadline=None)
@given(st.floats(0.05, 0.95), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_fourier_norm_monotone_in_tau(sigma, t1, t2):
    g = make_grid(1, 32, 2 * np.pi)
    f = SampledFunction.from_function(g, lambda x: np.exp(np.cos(x[..., 0])))
    lo, hi = sorted((t1, t2))
    assert fourier_gevrey_norm(f, sigma, lo) <= fourier_gevrey_norm(f, sigma, hi) * (1 + 1e-14)


def test_spectral_derivative_of_trig():
    g = make_grid(1, 32, 2 * np.pi)
    f = SampledFunction.from_function(g, lambda x: np.sin(3 * x[..., 0]))
    np.testing.assert_allclose(spectral_derivative(f, (2,)), -9 * np.sin(3 * g.x), atol=1e-12)


def test_finite_difference_matches_exact():
    x = np.linspace(-1, 1, 7)[:, None]
    d2 = finite_difference(lambda p: np.sin(p[..., 0]), x, (2,), 1.0)
    np.testing.assert_allclose(d2, -np.sin(x[:, 0]), atol=1e-5)


def test_seminorm_methods_agree_on_bump():
    g = make_grid(1, 512, 4.0)
    bump = gevrey_bump(2.0)
    analytic = spatial_gevrey_seminorm(bump, 2.0, 1.0, 4, grid=g)
    spectral = spatial_gevrey_seminorm(SampledFunction.from_function(g, bump), 2.0, 1.0, 4)
    assert analytic.method == "analytic" and spectral.method == "spectral"
    assert spectral.value == pytest.approx(analytic.value, rel=1e-3)


def test_seminorm_needs_grid_for_callables():
    with pytest.raises(ValueError):
        spatial_gevrey_seminorm(np.sin, 2.0, 1.0, 2)


def test_dominating_scale():
    per_order = [1.0, 2.0, 8.0]
    R = dominating_scale(per_order, 1.0)
    assert max(per_order[k] / (R**k * math.factorial(k)) for k in range(3)) == pytest.approx(1.0)


def test_embedding_margin_for_bump():
    g = make_grid(1, 256, 4.0)
    bump = gevrey_bump(2.0)
    per_order = spatial_gevrey_seminorm(bump, 2.0, 1.0, 8, grid=g).per_order
    R = dominating_scale(per_order, 2.0)
    semi = spatial_gevrey_seminorm(bump, 2.0, R, 8, grid=g).value
    rep = verify_embedding(SampledFunction.from_function(g, bump), 2.0, R, R ** -0.5, 2.0, seminorm=semi)
    assert rep.holds and rep.margin == pytest.approx(rep.rhs - rep.lhs)
