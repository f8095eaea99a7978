import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gevrey_pdo.inequalities import (IneqSample, RegionError, check_poly_gevrey, check_tri1, check_tri2,
                                     compare_remark_constants, poly_gevrey_constant, sample_tri1_region,
                                     sample_tri2_region, sigma_one_counterexample, sweep_poly_gevrey,
                                     sweep_tri1, sweep_tri2, tri1_constant, tri2_constant)

sigmas = st.floats(0.01, 0.99)
ratios = st.floats(1.001, 1e3)
dims = st.sampled_from([1, 2, 3])


def test_tri1_constant_examples():
    assert tri1_constant(2, 0.5) == pytest.approx(math.sqrt(2) - 1)
    assert tri1_constant(10, 0.5) == pytest.approx(math.sqrt(10) - 3)
    assert tri1_constant(2, 1 - 1e-9) == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValueError):
        tri1_constant(1.0, 0.5)
    with pytest.raises(ValueError):
        tri1_constant(2.0, 1.0)


def test_tri1_worked_example():
    rep = check_tri1(IneqSample([11.0], [10.0], 0.5, 2.0))
    assert rep.lhs == pytest.approx(0.153302, abs=1e-6)
    assert rep.rhs == pytest.approx(0.492586, abs=1e-6)
    assert rep.holds and rep.defect == pytest.approx(rep.rhs - rep.lhs)


def test_tri1_diagonal_and_region_error():
    rep = check_tri1(IneqSample([3.0, 4.0], [3.0, 4.0], 0.3, 1.5))
    assert rep.lhs == 0 and rep.rhs == pytest.approx(tri1_constant(1.5, 0.3))
    with pytest.raises(RegionError, match="not in region"):
        check_tri1(IneqSample([20.0], [10.0], 0.5, 2.0))


def test_tri2_examples():
    c = tri2_constant(2, 0.5)
    assert 0 < c < 1
    assert check_tri2(IneqSample([2.0], [1.0], 0.5, 2.0)).holds
    assert check_tri2(IneqSample([0.0], [5.0], 0.5, 2.0)).holds
    with pytest.raises(RegionError):
        check_tri2(IneqSample([100.0], [1.0], 0.5, 2.0))


@settings(max_examples=200, deadline=None)
@given(ratios, sigmas)
def test_constants_in_unit_interval(K, sigma):
    assert 0 < tri1_constant(K, sigma) < 1
    assert 0 < tri2_constant(K, sigma) < 1


def test_tri2_constant_limit_large_K():
    vals = [tri2_constant(K, 0.5) for K in (10, 100, 1e4, 1e6)]
    assert all(v < 1 for v in vals)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), dims, sigmas, ratios)
def test_tri1_property(seed, d, sigma, K):
    xi, eta = sample_tri1_region(np.random.default_rng(seed), 1, d, K)
    assert check_tri1(IneqSample(xi[0], eta[0], sigma, K)).holds


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32 - 1), dims, sigmas, ratios)
def test_tri2_property(seed, d, sigma, K):
    xi, eta = sample_tri2_region(np.random.default_rng(seed), 1, d, K)
    assert check_tri2(IneqSample(xi[0], eta[0], sigma, K)).holds


def test_tri2_tight_near_diagonal_branch():
    # high sigma with eta far larger than xi - eta inside the region: the first branch is active
    K, sigma = 2.0, 0.9
    t = np.linspace(1.0, 2.0, 2001)
    xi, eta = 1e3 * (1 + 1 / t), 1e3 * np.ones_like(t) / t * t
    worst = max(check_tri2(IneqSample([a], [b], sigma, K)).defect for a, b in zip(xi, eta))
    assert worst >= 0


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1e6), sigmas, st.floats(1e-3, 3.0), st.sampled_from([0, 1, 2, 4, 7.5]))
def test_poly_gevrey_property(r, sigma, tau, m):
    assert check_poly_gevrey([r], sigma, tau, m).holds


def test_poly_gevrey_constant_is_sharp():
    m, sigma, tau = 2.0, 0.5, 0.3
    x_star = (m / (sigma * tau)) ** (1 / sigma)
    b = x_star
    r = math.sqrt(b * b - 1)
    rep = check_poly_gevrey([r], sigma, tau, m)
    assert rep.lhs == pytest.approx(rep.rhs, rel=1e-12)
    assert poly_gevrey_constant(0, 0.5) == 1.0
    assert check_poly_gevrey([50.0], 0.5, 0.3, 2).holds


def test_poly_gevrey_domain():
    with pytest.raises(ValueError):
        check_poly_gevrey([1.0], 0.5, 0.0, 1)
    with pytest.raises(ValueError):
        check_poly_gevrey([1.0], 0.5, 0.1, -1)


def test_difference_vs_mean_value_constants():
    cmp = compare_remark_constants(2, 0.5)
    assert (cmp.difference_constant, cmp.mean_value_constant) == pytest.approx((math.sqrt(2) - 1, 0.5))
    assert cmp.smaller == "difference"
    w = compare_remark_constants(1.1, 0.9)
    assert w.mean_value_constant == pytest.approx(1.133, abs=1e-3)
    assert w.mean_value_constant > 1 > w.difference_constant
    far = compare_remark_constants(1e8, 0.5)
    assert far.difference_constant < 1e-3 and far.mean_value_constant < 1e-3


@pytest.mark.parametrize("c", [0.5, 0.9, 0.999])
def test_sigma_one_counterexample(c):
    ce = sigma_one_counterexample(c)
    assert ce.defect < 0
    diff = np.linalg.norm(ce.xi - ce.eta)
    assert diff <= np.linalg.norm(ce.eta) / ce.K


def test_sweeps_have_no_violations():
    rng = np.random.default_rng(0)
    for d in (1, 2, 3):
        assert sweep_tri1(rng, 20000, d, 0.7, 1.5).violations == 0
        assert sweep_tri2(rng, 20000, d, 0.9, 1.5).violations == 0
        assert sweep_poly_gevrey(rng, 20000, d, 0.3).violations == 0


def test_wider_ratio_first_branch_would_fail():
    # using c~ instead of sqrt(c~) in the first branch gives a constant below the true supremum
    K, sigma = 2.0, 0.9
    ct = (1 + K**-sigma) ** (1 / sigma)
    c = math.sqrt(ct)
    too_small = max(ct**sigma - (ct - 1) ** sigma, c**sigma / (1 + K**-sigma))
    r = np.logspace(0, 6, 400)[:, None]
    t = np.linspace(1 / K, K, 400)[None, :]
    eta, diff = r * t, r
    ratio = ((1 + (eta + diff) ** 2) ** (sigma / 2) - (1 + eta**2) ** (sigma / 2)) / (1 + diff**2) ** (sigma / 2)
    assert ratio.max() > too_small
    assert ratio.max() <= tri2_constant(K, sigma)
