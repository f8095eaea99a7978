"""Weighted triangle inequalities for ``<xi>^sigma`` and the polynomial/Gevrey bound.

All three inequalities come with explicit constants:

* near-diagonal: ``|<xi>^s - <eta>^s| <= (K^s - (K-1)^s) <xi-eta>^s`` when ``|xi-eta| <= |eta|/K``
* comparable: ``<xi>^s <= <eta>^s + c' <xi-eta>^s`` when ``|xi-eta|/K <= |eta| <= K|xi-eta|``
* polynomial: ``<xi>^m <= (m/(s e))^(m/s) tau^(-m/s) exp(tau <xi>^s)``

(``s`` standing for the index ``sigma`` here.)  The batch samplers draw
in-region points directly, so no rejection loop is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import bracket

REL_TOL = 1e-12


class RegionError(ValueError):
    """Sample lies outside the region where an inequality is claimed."""


def _check_k_sigma(K: float, sigma: float) -> None:
    if not K > 1:
        raise ValueError(f"K must exceed 1, got {K}")
    if not 0 < sigma < 1:
        raise ValueError(f"sigma must lie strictly inside (0, 1), got {sigma}")


@dataclass(frozen=True)
class IneqSample:
    xi: np.ndarray
    eta: np.ndarray
    sigma: float
    K: float

    def __post_init__(self):
        _check_k_sigma(self.K, self.sigma)
        object.__setattr__(self, "xi", np.atleast_1d(np.asarray(self.xi, dtype=float)))
        object.__setattr__(self, "eta", np.atleast_1d(np.asarray(self.eta, dtype=float)))
        if self.xi.shape != self.eta.shape:
            raise ValueError("xi and eta must have the same dimension")


@dataclass(frozen=True)
class IneqReport:
    lhs: float
    rhs: float
    constant_used: float
    holds: bool
    defect: float


def _report(lhs: float, rhs: float, const: float) -> IneqReport:
    defect = rhs - lhs
    return IneqReport(float(lhs), float(rhs), float(const), bool(defect >= -REL_TOL * max(1.0, rhs)), float(defect))


def tri1_constant(K: float, sigma: float) -> float:
    _check_k_sigma(K, sigma)
    return K**sigma - (K - 1) ** sigma


def tri2_constant(K: float, sigma: float) -> float:
    """``c' = max(c^s - (c-1)^s, c^s / (1 + K^-s))`` with ``c = sqrt(c~)``, ``c~ = (1 + K^-s)^(1/s)``.

    The first branch covers ``|eta| >= |xi-eta| / (c-1)`` through the
    near-diagonal bound with ratio ``c``; the second covers the rest of the
    comparable region.  Both are strictly below one.
    """
    _check_k_sigma(K, sigma)
    c_tilde = (1 + K**-sigma) ** (1 / sigma)
    c = math.sqrt(c_tilde)
    return max(c**sigma - (c - 1) ** sigma, c**sigma / (1 + K**-sigma))


def log_poly_gevrey_constant(m: float, sigma: float) -> float:
    return 0.0 if m == 0 else (m / sigma) * (math.log(m / sigma) - 1)


def poly_gevrey_constant(m: float, sigma: float) -> float:
    """``sup_x x^m exp(-x^s)`` scaled out: ``(m / (s e))^(m/s)``, and 1 for ``m = 0``; ``inf`` on overflow."""
    log_c = log_poly_gevrey_constant(m, sigma)
    return math.exp(log_c) if log_c < 700 else math.inf


def check_tri1(sample: IneqSample) -> IneqReport:
    xi, eta, s, K = sample.xi, sample.eta, sample.sigma, sample.K
    if np.linalg.norm(xi - eta) > np.linalg.norm(eta) / K:
        raise RegionError("sample not in region |xi - eta| <= |eta| / K")
    c = tri1_constant(K, s)
    lhs = abs(bracket(xi) ** s - bracket(eta) ** s)
    return _report(lhs, c * bracket(xi - eta) ** s, c)


def check_tri2(sample: IneqSample) -> IneqReport:
    xi, eta, s, K = sample.xi, sample.eta, sample.sigma, sample.K
    nd, ne = np.linalg.norm(xi - eta), np.linalg.norm(eta)
    if not nd / K <= ne <= K * nd:
        raise RegionError("sample not in region |xi - eta| / K <= |eta| <= K |xi - eta|")
    c = tri2_constant(K, s)
    return _report(bracket(xi) ** s, bracket(eta) ** s + c * bracket(xi - eta) ** s, c)


def check_poly_gevrey(xi, sigma: float, tau: float, m: float) -> IneqReport:
    if not 0 < sigma < 1:
        raise ValueError(f"sigma must lie strictly inside (0, 1), got {sigma}")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    b = float(bracket(np.atleast_1d(np.asarray(xi, float))))
    c = poly_gevrey_constant(m, sigma)
    log_rhs = log_poly_gevrey_constant(m, sigma) - (m / sigma) * math.log(tau) + tau * b**sigma
    lhs = b**m
    if log_rhs > 700:
        return IneqReport(lhs, math.inf, c, True, math.inf)
    return _report(lhs, math.exp(log_rhs), c)


@dataclass(frozen=True)
class ConstantComparison:
    difference_constant: float
    mean_value_constant: float

    @property
    def smaller(self) -> str:
        return "difference" if self.difference_constant <= self.mean_value_constant else "mean_value"


def compare_remark_constants(K: float, sigma: float) -> ConstantComparison:
    """``K^s - (K-1)^s`` against the mean-value constant ``s / (K-1)^(1-s)``; the latter can exceed 1."""
    return ConstantComparison(tri1_constant(K, sigma), sigma / (K - 1) ** (1 - sigma))


@dataclass(frozen=True)
class Counterexample:
    xi: np.ndarray
    eta: np.ndarray
    K: float
    constant: float
    defect: float


def sigma_one_counterexample(constant: float = 0.99, K: float = 2.0, d: int = 1,
                             max_scale: float = 1e15) -> Counterexample:
    """Find ``xi, eta`` with ``|<xi> - <eta>| > constant <xi-eta>`` in the near-diagonal region.

    At ``sigma = 1`` the constant ``K - (K-1)`` equals one and cannot be
    lowered: along ``xi = eta (1 + 1/K)`` the ratio tends to one as
    ``|eta| -> inf``.  Raises if no violation is found below ``max_scale``.
    """
    if not 0 < constant < 1:
        raise ValueError("constant must lie in (0, 1)")
    e = np.zeros(d)
    e[0] = 1.0
    t = 1.0
    while t <= max_scale:
        eta = t * e
        xi = eta * (1 + 1 / K)
        defect = constant * bracket(xi - eta) - abs(bracket(xi) - bracket(eta))
        if defect < 0:
            return Counterexample(xi, eta, K, constant, float(defect))
        t *= 10
    raise RuntimeError("no counterexample found; increase max_scale")


# ---------------------------------------------------------------------------
# batch sweeps


def _directions(rng: np.random.Generator, n: int, d: int) -> np.ndarray:
    v = rng.normal(size=(n, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _log_uniform(rng, n, lo, hi):
    return np.exp(rng.uniform(math.log(lo), math.log(hi), size=n))


def sample_tri1_region(rng, n: int, d: int, K: float, scale=(1e-3, 1e6)):
    """``eta`` with log-uniform size and ``xi - eta`` uniform in the ball of radius ``|eta|/K``."""
    eta = _directions(rng, n, d) * _log_uniform(rng, n, *scale)[:, None]
    r = np.linalg.norm(eta, axis=1) / K * rng.uniform(size=n) ** (1 / d)
    return eta + _directions(rng, n, d) * r[:, None], eta


def sample_tri2_region(rng, n: int, d: int, K: float, scale=(1e-3, 1e6)):
    """``|xi - eta|`` log-uniform, ``|eta| = |xi - eta| K^u`` with ``u`` uniform on [-1, 1]."""
    rd = _log_uniform(rng, n, *scale)
    ne = rd * K ** rng.uniform(-1, 1, size=n)
    eta = _directions(rng, n, d) * ne[:, None]
    return eta + _directions(rng, n, d) * rd[:, None], eta


@dataclass(frozen=True)
class SweepResult:
    name: str
    n_samples: int
    violations: int
    worst_relative_defect: float
    constant: float


def _tally(name, lhs, rhs, const) -> SweepResult:
    rel = (rhs - lhs) / np.maximum(1.0, rhs)
    return SweepResult(name, len(lhs), int(np.count_nonzero(rel < -REL_TOL)), float(rel.min()), const)


def sweep_tri1(rng, n: int, d: int, sigma: float, K: float) -> SweepResult:
    xi, eta = sample_tri1_region(rng, n, d, K)
    c = tri1_constant(K, sigma)
    lhs = np.abs(bracket(xi) ** sigma - bracket(eta) ** sigma)
    return _tally("tri1", lhs, c * bracket(xi - eta) ** sigma, c)


def sweep_tri2(rng, n: int, d: int, sigma: float, K: float) -> SweepResult:
    xi, eta = sample_tri2_region(rng, n, d, K)
    c = tri2_constant(K, sigma)
    return _tally("tri2", bracket(xi) ** sigma, bracket(eta) ** sigma + c * bracket(xi - eta) ** sigma, c)


def sweep_poly_gevrey(rng, n: int, d: int, sigma: float, m_values=(0, 1, 2, 4),
                      tau_range=(0.01, 2.0)) -> SweepResult:
    """Compared in logarithms so that large ``|xi|`` cannot overflow."""
    xi = _directions(rng, n, d) * _log_uniform(rng, n, 1e-3, 1e8)[:, None]
    tau = _log_uniform(rng, n, *tau_range)
    m = np.asarray(m_values, float)[rng.integers(len(m_values), size=n)]
    logc = np.array([log_poly_gevrey_constant(mm, sigma) for mm in m])
    b = bracket(xi)
    log_lhs = m * np.log(b)
    log_rhs = logc - (m / sigma) * np.log(tau) + tau * b**sigma
    gap = log_rhs - log_lhs
    return SweepResult("poly_gevrey", n, int(np.count_nonzero(gap < -REL_TOL)), float(gap.min()), math.nan)


__all__ = [
    "IneqSample", "IneqReport", "RegionError", "tri1_constant", "tri2_constant", "poly_gevrey_constant",
    "check_tri1", "check_tri2", "check_poly_gevrey", "compare_remark_constants", "ConstantComparison",
    "sigma_one_counterexample", "sample_tri1_region", "sample_tri2_region", "sweep_tri1", "sweep_tri2",
    "sweep_poly_gevrey", "SweepResult",
]
