import math

import numpy as np
import pytest
import sympy as sp

from gevrey_pdo.grid import bracket, make_grid
from gevrey_pdo.symbol_io import load_symbol, save_symbol
from gevrey_pdo.symbols import (SampledSymbol, SymbolClassParams, SymbolError, canonical_symbol, constant_symbol,
                                estimate_seminorm, gevrey_bump, multiplier_symbol, random_bandlimited_symbol,
                                sup_alpha_seminorm, validate_class_membership)


@pytest.mark.parametrize("s", [1.5, 2.0, 3.0])
def test_bump_derivatives_match_sympy(s):
    x = sp.symbols("x")
    expr = sp.exp(-(1 - x**2) ** (-1 / sp.nsimplify(s - 1)))
    bump = gevrey_bump(s)
    pts = np.array([-0.8, -0.3, 0.0, 0.45, 0.9])
    for k in range(5):
        f = sp.lambdify(x, sp.diff(expr, x, k), "mpmath")
        ref = np.array([float(f(p)) for p in pts])
        got = bump.derivative(pts, (k,))
        np.testing.assert_allclose(got, ref, rtol=1e-9, atol=1e-12)


def test_bump_vanishes_outside_support():
    bump = gevrey_bump(2.0, center=0.5, width=0.25)
    assert bump(np.array([0.2, 0.8, 1.0])).tolist() == [0.0, 0.0, 0.0]
    assert float(bump(np.array([0.5]))) == pytest.approx(math.exp(-1))


def test_class_params():
    SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0)
    with pytest.raises(SymbolError):
        SymbolClassParams(0.0, 0.5, 0.5, 2.0, 1.0)
    with pytest.raises(SymbolError):
        SymbolClassParams(0.0, 1.0, 0.0, 1.0, 1.0)
    with pytest.raises(SymbolError):
        gevrey_bump(1.0)


def test_canonical_symbol_values_and_support():
    g = make_grid(1, 64, 2 * np.pi)
    p = SymbolClassParams(1.0, 1.0, 0.25, 2.0, 1.0)
    a = canonical_symbol(p, g, r=1.0)
    psi = gevrey_bump(2.0)
    xi = g.xi[40]
    expected = bracket(xi) * psi(bracket(xi) ** 0.25 * g.x / 1.0)
    np.testing.assert_allclose(a.values[:, 40], expected, atol=1e-14)
    assert a.support_measure == pytest.approx(2.0)
    assert a.outside_support_variation() == 0.0
    with pytest.raises(SymbolError):
        canonical_symbol(p, g, r=4.0)


def test_canonical_symbol_class_membership():
    g = make_grid(1, 128, 2 * np.pi)
    p = SymbolClassParams(0.0, 1.0, 0.25, 2.0, 1.0)
    table = validate_class_membership(canonical_symbol(p, g), 2, 1)
    assert table.bounded
    assert table.sup_alpha0 >= table.entries[((0,), (0,))] > 0
    # the same samples declared one order too low must be flagged
    right = canonical_symbol(p, g)
    wrong = SampledSymbol(g, right.values, SymbolClassParams(-1.0, 1.0, 0.25, 2.0, 1.0), right.support_box)
    assert not validate_class_membership(wrong, 1, 0).bounded


def test_constant_symbol_seminorms():
    g = make_grid(1, 32, 2 * np.pi)
    a = constant_symbol(g, 2.0)
    assert estimate_seminorm(a, (0,), (0,)) == pytest.approx(2.0)
    assert estimate_seminorm(a, (1,), (0,)) == pytest.approx(0.0, abs=1e-12)
    assert estimate_seminorm(a, (0,), (1,)) == pytest.approx(0.0, abs=1e-9)


def test_multiplier_xi_derivative():
    g = make_grid(1, 64, 2 * np.pi)
    params = SymbolClassParams(1.0, 1.0, 0.0, 2.0, 1.0)
    a = multiplier_symbol(g, lambda xi: bracket(xi), params)
    # d_xi <xi> = xi/<xi>, normalised by <xi>^(-1+1) -> sup |xi|/<xi|
    val = estimate_seminorm(a, (0,), (1,))
    assert val == pytest.approx(np.max(np.abs(g.xi) / bracket(g.xi[:, None])), rel=1e-5)


def test_random_symbol_evaluator_matches_samples():
    g = make_grid(1, 32, 2 * np.pi)
    a = random_bandlimited_symbol(g, np.random.default_rng(1), band=4)
    x = g.points().reshape(-1, 1, 1)
    xi = g.frequencies().reshape(1, -1, 1)
    np.testing.assert_allclose(a.evaluate(x, xi), a.values, atol=1e-12)
    assert sup_alpha_seminorm(a, 2) > 0


def test_symbol_file_roundtrip(tmp_path):
    g = make_grid(1, 32, 3.0)
    a = canonical_symbol(SymbolClassParams(0.5, 1.0, 0.25, 2.0, 1.5), g)
    path = save_symbol(tmp_path / "sym", a)
    assert path.suffix == ".npz"
    b = load_symbol(path)
    assert b.grid == a.grid and b.params == a.params and b.support_box == a.support_box
    np.testing.assert_array_equal(b.values, a.values)
    assert b.meta["kind"] == "canonical"


def test_symbol_file_rejects_foreign_archive(tmp_path):
    path = tmp_path / "x.npz"
    np.savez(path, values=np.zeros(3))
    with pytest.raises(SymbolError):
        load_symbol(path)
