import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gevrey_pdo import conjugation as cj
from gevrey_pdo.gevrey import WeightOverflowError
from gevrey_pdo.grid import bracket, make_grid
from gevrey_pdo.quantization import gevrey_random_input
from gevrey_pdo.symbols import (SymbolClassParams, canonical_symbol, constant_symbol, multiplier_symbol,
                                random_bandlimited_symbol)


@pytest.fixture(scope="module")
def grid():
    return make_grid(1, 64, 2 * np.pi)


def test_weight_roundtrip(grid):
    f = gevrey_random_input(grid, np.random.default_rng(0), 0.5, 0.0, 20)
    back = cj.apply_weight(cj.apply_weight(f, 0.5, 0.7), 0.5, -0.7)
    np.testing.assert_allclose(back.values, f.values, atol=1e-12)


def test_weight_overflow(grid):
    f = gevrey_random_input(grid, np.random.default_rng(0), 0.5, 0.0, 4)
    with pytest.raises(WeightOverflowError):
        cj.apply_weight(f, 0.9, 200.0)


def test_conjugated_multiply_matches_kernel(grid):
    rng = np.random.default_rng(1)
    F = gevrey_random_input(grid, rng, 0.5, 0.0, 8)
    v = gevrey_random_input(grid, rng, 0.5, 0.0, 8)
    p = cj.ConjugationParams(0.5, 0.6, 1.0)
    spatial = cj.conjugated_multiply(F, v, p)
    kernel = cj.conjugation_kernel_sum(F, v, p)
    assert np.linalg.norm(spatial.spectrum - kernel) <= 1e-10 * np.linalg.norm(kernel)
    with_m = cj.conjugation_kernel_sum(F, v, p, sobolev=True)
    np.testing.assert_allclose(with_m, grid.brackets * kernel, atol=1e-12)


def test_conjugated_multiply_tau_zero_is_product(grid):
    rng = np.random.default_rng(2)
    F = gevrey_random_input(grid, rng, 0.5, 0.0, 8)
    v = gevrey_random_input(grid, rng, 0.5, 0.0, 8)
    out = cj.conjugated_multiply(F, v, cj.ConjugationParams(0.5, 0.0))
    np.testing.assert_allclose(out.values, F.values * v.values, atol=1e-12)


def test_multiplication_ratio_bounded(grid):
    rng = np.random.default_rng(3)
    p = cj.ConjugationParams(0.5, 0.3, 1.0)
    pairs = [(gevrey_random_input(grid, rng, 0.5, 0.3, 10), gevrey_random_input(grid, rng, 0.5, 0.3, 10))
             for _ in range(5)]
    c = cj.fitted_multiplication_constant(pairs, p)
    assert 0 < c < 10


def test_region_boundaries_and_precedence():
    # |xi - eta| = |eta| / K lies in R1 even though it also meets the R3 inequality closure
    assert cj.classify_region([15.0], [10.0], 2.0) is cj.Region.R1
    assert cj.classify_region([30.0], [10.0], 2.0) is cj.Region.R2
    assert cj.classify_region([0.0], [0.0], 2.0) is cj.Region.R1
    assert cj.classify_region([1.0], [0.0], 2.0) is cj.Region.R2
    assert cj.classify_region([13.0], [5.0], 2.0) is cj.Region.R3
    with pytest.raises(ValueError):
        cj.classify_region([1.0], [1.0], 1.0)


@settings(max_examples=200, deadline=None)
@given(st.lists(st.floats(-1e4, 1e4), min_size=2, max_size=2), st.lists(st.floats(-1e4, 1e4), min_size=2, max_size=2),
       st.floats(1.001, 100))
def test_partition_single_label(xi, eta, K):
    p1, p2, p3 = cj.region_predicates(np.array(xi), np.array(eta), K)
    assert p1 or p2 or p3
    label = cj.classify_region(xi, eta, K)
    assert label == (1 if p1 else 2 if p2 else 3)


def test_weight_at_origin():
    rep = cj.weight_W([0.0], [0.0], 0.5, 0.4, 0.1, 0.2, 2.0)
    assert rep.value == pytest.approx(math.exp(0.1 - 0.8))
    assert rep.region is cj.Region.R1


def test_weight_log_fallback():
    rep = cj.weight_W([1e6], [1e6], 0.9, 0.1, 2.0, 0.0, 1.1, K=2.0)
    assert rep.value is None and rep.log_value > 700


@settings(max_examples=200, deadline=None)
@given(st.floats(-1e5, 1e5), st.floats(-1e5, 1e5), st.floats(0.05, 1.0), st.floats(0.0, 0.95),
       st.floats(0.0, 0.5), st.sampled_from([1.5, 2.0, 3.0]), st.floats(0.3, 1.0))
def test_region_bound_holds_pointwise(xi, eta, tau, frac, delta, s, sig_frac):
    sigma = (1 - delta) / s * sig_frac
    tp = tau * frac
    rep = cj.weight_W([xi], [eta], sigma, tau, tp, delta, s)
    assert rep.log_value <= rep.log_region_bound + 1e-9 * max(1.0, abs(rep.log_region_bound))


@settings(max_examples=100, deadline=None)
@given(st.floats(-1e4, 1e4), st.floats(-1e4, 1e4), st.floats(0.01, 1.0), st.floats(0.01, 1.0),
       st.floats(0.0, 1.0))
def test_weight_monotone(xi, eta, t1, t2, tp):
    lo, hi = sorted((t1, t2))
    w = lambda tau, tpr: cj.log_weight(np.array([xi]), np.array([eta]), 0.4, tau, tpr, 0.1, 2.0)
    assert w(hi, tp) <= w(lo, tp)
    assert w(lo, tp * 0.5) <= w(lo, tp)


def test_choose_K():
    assert cj.choose_K(1.0, 0.0, 0.5, 0.2, 2.0) == 2.0
    tau, tp = 1.0, 0.5
    K = cj.choose_K(tau, tp, 0.5, 0.2, 2.0)
    c1, c2, _ = cj.region_coefficients(K, tau, tp, 0.5, 0.2, 2.0)
    assert c1 > 1e-6 and c2 > 1e-6
    ks = [cj.choose_K(1.0, t, 0.5, 0.2, 2.0) for t in (0.3, 0.6, 0.9, 0.99)]
    assert ks == sorted(ks)
    with pytest.raises(ValueError):
        cj.choose_K(1.0, 1.0, 0.5, 0.2, 2.0)


def test_weight_l2_finite_when_hypotheses_hold():
    vals = [cj.weight_l2_eta([x], 0.375, 0.4, 0.2, 0.25, 2.0, 400) for x in (0.0, 50.0, 200.0)]
    assert all(np.isfinite(vals)) and max(vals) < 10


def test_conjugated_symbol_trivial_cases(grid):
    a = random_bandlimited_symbol(grid, np.random.default_rng(4), band=8)
    np.testing.assert_allclose(cj.conjugated_symbol(a, 0.5, 0.0).values, a.values, atol=1e-12)
    m = multiplier_symbol(grid, lambda xi: bracket(xi) ** 0.5)
    np.testing.assert_allclose(cj.conjugated_symbol(m, 0.5, 0.4).values, m.values, atol=1e-12)


def test_conjugated_symbol_identity():
    g = make_grid(1, 128, 2 * np.pi)
    rng = np.random.default_rng(5)
    for _ in range(3):
        a = random_bandlimited_symbol(g, rng, band=16)
        u = gevrey_random_input(g, rng, 0.5, 0.3, 32)
        assert cj.conjugation_identity_error(a, u, 0.5, 0.3) < 1e-10


def test_conjugated_columns_match_lattice(grid):
    a = canonical_symbol(SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0), grid)
    full = cj.conjugated_symbol(a, 0.5, 0.3).values
    cols = cj.conjugated_columns(a, grid.frequencies()[[3, 40]], 0.5, 0.3)
    np.testing.assert_allclose(cols, full[:, [3, 40]], atol=1e-12)


def test_expansion_sign_is_minus():
    assert cj.expansion_sign(make_grid(1, 64, 2 * np.pi), 0.5, 0.3) == -1


def test_expansion_zero_order_term_is_a(grid):
    a = canonical_symbol(SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0), grid)
    np.testing.assert_allclose(cj.expansion_partial_sum(a, 0, 0.5, 0.3), a.values, atol=1e-12)


def test_expansion_x_independent_has_zero_remainder():
    g = make_grid(1, 128, 2 * np.pi)
    m = multiplier_symbol(g, lambda xi: np.cos(xi[..., 0] / 10))
    rep = cj.expansion_remainder(m, 1, 0.5, 0.3)
    assert max(rep.remainder_samples) < 1e-12


def test_expansion_needs_octaves():
    with pytest.raises(ValueError, match="octaves"):
        cj.expansion_remainder(constant_symbol(make_grid(1, 16, 2 * np.pi)), 1, 0.5, 0.3)


def test_predicted_orders():
    assert cj.predicted_remainder_order(0, 0, 0.5) == -0.5
    assert cj.predicted_remainder_order(0, 2, 0.5) == -1.5
    assert cj.predicted_remainder_order(1, 5, 0.5) == -0.5


def test_lemma51_tau_zero(grid):
    a = canonical_symbol(SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0), grid)
    rep = cj.lemma51_bound_check(a, (0,), (0,), 0.0, 0.5)
    assert rep.measured == pytest.approx(math.exp(-1))
    assert rep.ratio < 1


def test_lemma51_x_independent(grid):
    m = multiplier_symbol(grid, lambda xi: np.cos(xi[..., 0] / 10))
    assert cj.conjugated_seminorm_measure(m, (1,), (0,), 0.5, 0.3) < 1e-12


def test_lemma51_domain(grid):
    a = canonical_symbol(SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0), grid)
    with pytest.raises(ValueError):
        cj.lemma51_bound_check(a, (0,), (0,), 0.6, 0.5)


@pytest.mark.parametrize("order", [1, 2])
def test_faa_di_bruno_step_constant_stable(order):
    x = np.linspace(-100, 100, 41)
    X, E = np.meshgrid(x, x)
    base = cj.exponential_factor_ratios(0.5, 0.3, order, X, E).max()
    wide = cj.exponential_factor_ratios(0.5, 0.3, order, 8 * X, 8 * E).max()
    assert np.isfinite(base) and wide <= base
