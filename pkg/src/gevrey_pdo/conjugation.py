"""Gevrey conjugation of functions and symbols, paraproduct regions, weights.

``F^(tau) = exp(tau D^sigma) F exp(-tau D^sigma)`` with ``D = op(<.>)``; on the
Fourier side::

    F(D^m F^(tau) v)(xi) = sum_eta exp(tau <xi>^sigma - tau <eta>^sigma) <xi>^m F^(xi - eta) v^(eta)

The conjugated symbol of ``op_0(a)`` is obtained column by column::

    a~(x, xi) = sum_eta exp(i eta . x) exp(tau <xi + eta>^sigma - tau <xi>^sigma) a^(eta, xi)
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .gevrey import EXP_LIMIT, WeightOverflowError, check_weight, embedding_constant, multi_indices
from .gevrey import fd_step, fourier_gevrey_norm, sobolev_norm
from .grid import GridError, GridSpec, SampledFunction, bracket, fft_coefficients, ifft_coefficients
from .inequalities import tri1_constant
from .quantization import _flat_index, _wavenumbers
from .symbols import SampledSymbol, SymbolClassParams, SymbolError, estimate_seminorm

K_SEARCH_LIMIT = 2.0**60


class Region(IntEnum):
    R1 = 1
    R2 = 2
    R3 = 3


@dataclass(frozen=True)
class ConjugationParams:
    sigma: float
    tau: float
    m: float = 0.0

    def __post_init__(self):
        if not 0 < self.sigma < 1:
            raise ValueError(f"sigma must lie in (0, 1), got {self.sigma}")
        if self.tau < 0:
            raise ValueError(f"tau must be nonnegative, got {self.tau}")
        if self.m < 0:
            raise ValueError(f"Sobolev order must be nonnegative, got {self.m}")


# ---------------------------------------------------------------------------
# functions


def apply_weight(f: SampledFunction, sigma: float, tau: float) -> SampledFunction:
    """Multiply the spectrum by ``exp(tau <xi>^sigma)``; negative ``tau`` inverts."""
    check_weight(f.grid, sigma, tau)
    return SampledFunction.from_spectrum(f.grid, np.exp(tau * f.grid.brackets**sigma) * f.spectrum)


def conjugated_multiply(F: SampledFunction, v: SampledFunction, params: ConjugationParams) -> SampledFunction:
    """``F^(tau) v`` through physical-space multiplication between two weights."""
    if F.grid != v.grid:
        raise GridError("operands live on different grids")
    w = apply_weight(v, params.sigma, -params.tau)
    return apply_weight(SampledFunction(F.grid, F.values * w.values), params.sigma, params.tau)


def conjugation_kernel_sum(F: SampledFunction, v: SampledFunction, params: ConjugationParams,
                           sobolev: bool = False) -> np.ndarray:
    """Spectrum of ``F^(tau) v`` (times ``<xi>^m`` if ``sobolev``) by the frequency sum.

    ``F^(xi - eta)`` is taken as zero when ``xi - eta`` leaves the lattice, as on
    the whole space.
    """
    grid = F.grid
    if grid != v.grid:
        raise GridError("operands live on different grids")
    check_weight(grid, params.sigma, params.tau)
    k = _wavenumbers(grid)
    t_idx, t_ok = _flat_index(k[:, None, :] - k[None, :, :], grid.N)
    br = grid.brackets.reshape(-1) ** params.sigma
    expo = params.tau * (br[:, None] - br[None, :])
    kern = np.where(t_ok, F.spectrum.reshape(-1)[t_idx], 0.0) * np.exp(expo)
    out = kern @ v.spectrum.reshape(-1)
    if sobolev:
        out = out * grid.brackets.reshape(-1) ** params.m
    return out.reshape(grid.shape)


@dataclass(frozen=True)
class MultiplicationSample:
    lhs: float
    rhs: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.rhs if self.rhs > 0 else 0.0


def multiplication_sample(F: SampledFunction, v: SampledFunction, params: ConjugationParams) -> MultiplicationSample:
    """``|F^(tau) v|_{H^m}`` against ``|D^m F|_{sigma,tau} |v|_{L2} + |F|_{sigma,tau} |v|_{H^m}``."""
    out = conjugated_multiply(F, v, params)
    lhs = sobolev_norm(out, params.m)
    dmF = SampledFunction.from_spectrum(F.grid, F.grid.brackets**params.m * F.spectrum)
    rhs = (fourier_gevrey_norm(dmF, params.sigma, params.tau) * v.l2_norm()
           + fourier_gevrey_norm(F, params.sigma, params.tau) * sobolev_norm(v, params.m))
    return MultiplicationSample(lhs, rhs)


def fitted_multiplication_constant(pairs, params: ConjugationParams) -> float:
    return max(multiplication_sample(F, v, params).ratio for F, v in pairs)


# ---------------------------------------------------------------------------
# regions and the loss-of-radius weight


def _norm(v):
    v = np.asarray(v, dtype=float)
    if v.ndim == 0:
        return np.abs(v)
    return np.sqrt(np.sum(v * v, axis=-1))


def region_predicates(xi, eta, K: float):
    """The three region predicates evaluated independently (no precedence)."""
    diff, ne = _norm(np.asarray(xi, float) - np.asarray(eta, float)), _norm(eta)
    p1 = diff <= ne / K
    p2 = ne <= diff / K
    p3 = (diff / K < ne) & (ne < K * diff)
    return p1, p2, p3


def classify_regions(xi, eta, K: float) -> np.ndarray:
    """Vectorised labels 1, 2, 3 with boundary precedence R1 > R2 > R3."""
    if np.any(np.asarray(K) <= 1):
        raise ValueError(f"K must exceed 1, got {K}")
    p1, p2, _ = region_predicates(xi, eta, K)
    return np.where(p1, 1, np.where(p2, 2, 3))


def classify_region(xi, eta, K: float) -> Region:
    return Region(int(classify_regions(xi, eta, K)))


def region_coefficients(K: float, tau: float, tau_prime: float, sigma: float, delta: float, s: float):
    """Decay coefficients of the three region bounds; all positive means every bound decays."""
    c1 = tri1_constant(K, sigma)
    return (tau - (1 + c1) * tau_prime,
            tau * (1 + 1 / K) ** (-delta / s) - tau_prime,
            tau * (1 + K) ** (-delta / s) - tau_prime)


def choose_K(tau: float, tau_prime: float, sigma: float, delta: float, s: float,
             margin: float = 1e-6) -> float:
    """Smallest dyadic ``K >= 2`` with ``tau - (1 + K^sigma - (K-1)^sigma) tau' > margin``
    and ``tau (1 + 1/K)^(-delta/s) - tau' > margin``."""
    if not tau_prime < tau:
        raise ValueError(f"need tau' < tau, got tau'={tau_prime}, tau={tau}")
    K = 2.0
    while K <= K_SEARCH_LIMIT:
        c_r1, c_r2, _ = region_coefficients(K, tau, tau_prime, sigma, delta, s)
        if c_r1 > margin and c_r2 > margin:
            return K
        K *= 2
    raise ValueError(f"no K <= 2^60 satisfies the region conditions for tau={tau}, tau'={tau_prime}")


@dataclass(frozen=True)
class WeightReport:
    log_value: float
    value: float | None
    region: Region
    K: float
    log_bounds: dict = field(default_factory=dict)

    @property
    def log_region_bound(self) -> float:
        return self.log_bounds[self.region]


def log_weight(xi, eta, sigma, tau, tau_prime, delta, s):
    bx, be, bd = bracket(xi), bracket(eta), bracket(np.asarray(xi, float) - np.asarray(eta, float))
    return tau_prime * bx**sigma - tau * be**sigma - tau * bx ** (-delta / s) * bd ** (1 / s)


def log_region_bounds(xi, eta, sigma, tau, tau_prime, delta, s, K):
    """Exponents of the three pointwise region bounds on ``W``.

    * R1: ``-(tau - (1 + c1) tau') <eta>^sigma``
    * R2: ``-(tau - c1 tau') <eta>^sigma - (tau (1 + 1/K)^(-delta/s) - tau') <xi-eta>^((1-delta)/s)``
    * R3: ``-(tau - tau') <eta>^sigma - (tau (1 + K)^(-delta/s) - tau') <xi-eta>^((1-delta)/s)``

    with ``c1 = K^sigma - (K-1)^sigma``; each holds on its own region when
    ``sigma <= (1 - delta)/s``.
    """
    c1 = tri1_constant(K, sigma)
    be = bracket(eta) ** sigma
    bd = bracket(np.asarray(xi, float) - np.asarray(eta, float)) ** ((1 - delta) / s)
    return {
        Region.R1: -(tau - (1 + c1) * tau_prime) * be,
        Region.R2: -(tau - c1 * tau_prime) * be - (tau * (1 + 1 / K) ** (-delta / s) - tau_prime) * bd,
        Region.R3: -(tau - tau_prime) * be - (tau * (1 + K) ** (-delta / s) - tau_prime) * bd,
    }


def weight_W(xi, eta, sigma: float, tau: float, tau_prime: float, delta: float, s: float,
             K: float | None = None) -> WeightReport:
    """``W = exp(tau' <xi>^sigma - tau <eta>^sigma - tau <xi>^(-delta/s) <xi-eta>^(1/s))``.

    ``value`` is ``None`` when the exponent exceeds the overflow limit; the
    log value is always returned.
    """
    if K is None:
        K = choose_K(tau, tau_prime, sigma, delta, s) if tau_prime < tau else 2.0
    lw = float(log_weight(xi, eta, sigma, tau, tau_prime, delta, s))
    value = math.exp(lw) if lw <= EXP_LIMIT else None
    bounds = {r: float(b) for r, b in log_region_bounds(xi, eta, sigma, tau, tau_prime, delta, s, K).items()}
    return WeightReport(lw, value, classify_region(xi, eta, K), K, bounds)


def weight_l2_eta(xi, sigma, tau, tau_prime, delta, s, kmax: int, spacing: float = 1.0) -> float:
    """Truncated ``L2_eta`` norm of ``W`` at fixed ``xi`` over ``|eta_i| <= kmax * spacing`` (d from ``xi``)."""
    xi = np.atleast_1d(np.asarray(xi, float))
    k1 = np.arange(-kmax, kmax + 1) * spacing
    eta = np.stack(np.meshgrid(*([k1] * len(xi)), indexing="ij"), -1).reshape(-1, len(xi))
    lw = log_weight(xi[None, :], eta, sigma, tau, tau_prime, delta, s)
    if np.max(lw) > EXP_LIMIT:
        raise WeightOverflowError("weight exponent exceeds the overflow limit")
    return float(np.sqrt(np.sum(np.exp(2 * lw)) * spacing ** len(xi)))


# ---------------------------------------------------------------------------
# conjugated symbols


def _conjugation_exponent(xi, eta_lattice, sigma, tau):
    """``tau (<xi + eta>^sigma - <xi>^sigma)`` with ``xi`` of shape (M, d), result (N^d, M)."""
    return tau * (bracket(xi[None, :, :] + eta_lattice[:, None, :]) ** sigma - bracket(xi)[None, :] ** sigma)


def _x_spectrum_columns(a: SampledSymbol, xi: np.ndarray) -> np.ndarray:
    """``a^(eta, xi_c)`` for arbitrary frequencies ``xi`` (shape (M, d)); result ``(N^d, M)``."""
    grid = a.grid
    x = grid.points().reshape(-1, 1, grid.d)
    vals = np.broadcast_to(a.evaluate(x, xi[None, :, :]), (grid.size, len(xi)))
    spec = fft_coefficients(grid, vals.reshape(grid.shape + (len(xi),)))
    return spec.reshape(grid.size, len(xi))


def conjugated_columns(a: SampledSymbol, xi, sigma: float, tau: float, alpha=None) -> np.ndarray:
    """``d_x^alpha a~(x_j, xi_c)`` for arbitrary ``xi_c``, shape ``(N^d, M)``; needs an evaluator."""
    grid = a.grid
    xi = np.asarray(xi, float).reshape(-1, grid.d)
    eta = grid.frequencies().reshape(-1, grid.d)
    expo = _conjugation_exponent(xi, eta, sigma, tau)
    if np.max(np.abs(expo)) > EXP_LIMIT:
        raise WeightOverflowError("conjugation weight exceeds the overflow limit")
    spec = np.exp(expo) * _x_spectrum_columns(a, xi)
    if alpha is not None and any(alpha):
        spec = spec * np.prod((1j * eta) ** np.asarray(alpha), axis=-1)[:, None]
    out = ifft_coefficients(grid, spec.reshape(grid.shape + (len(xi),)))
    return out.reshape(grid.size, len(xi))


def conjugated_symbol(a: SampledSymbol, sigma: float, tau: float) -> SampledSymbol:
    """Symbol of ``exp(tau D^sigma) op_0(a) exp(-tau D^sigma)`` on grid x lattice."""
    grid = a.grid
    d = grid.d
    xi = grid.frequencies().reshape(-1, d)
    eta = xi
    expo = _conjugation_exponent(xi, eta, sigma, tau)
    peak = float(np.max(np.abs(expo)))
    if peak > EXP_LIMIT:
        raise WeightOverflowError(
            f"conjugation weight overflow: max |tau(<xi+eta>^sigma - <xi>^sigma)| = {peak:.6g} > {EXP_LIMIT:g}")
    ahat = a.x_spectrum().reshape(grid.size, grid.size)
    vals = ifft_coefficients(grid, (np.exp(expo) * ahat).reshape(grid.shape * 2), axes=tuple(range(d)))
    p = a.params
    params = SymbolClassParams(p.m, 1.0, 0.0, p.s, p.R)
    return SampledSymbol(grid, vals, params, a.support_box, None,
                         {"kind": "conjugated", "sigma": sigma, "tau": tau})


def conjugation_identity_error(a: SampledSymbol, u: SampledFunction, sigma: float, tau: float) -> float:
    """Relative L2 gap between ``op_0(a~) u`` and ``exp(tau D^sigma) op_0(a) exp(-tau D^sigma) u``.

    The left side uses the Fourier-side quantization of the conjugated
    symbol; the right side uses direct quadrature between two weights.
    """
    from .quantization import quantize_direct, quantize_fourier_h0

    lhs = quantize_fourier_h0(conjugated_symbol(a, sigma, tau), u)
    rhs = apply_weight(quantize_direct(a, apply_weight(u, sigma, -tau), 0.0), sigma, tau)
    return float(np.linalg.norm(lhs.values - rhs.values) / np.linalg.norm(u.values))


# ---------------------------------------------------------------------------
# seminorm bounds for the conjugated symbol


@dataclass(frozen=True)
class EnvelopeReport:
    measured: float
    bound_curve: float
    tau: float
    tau_bar: float

    @property
    def ratio(self) -> float:
        if self.bound_curve > 0:
            return self.measured / self.bound_curve
        return 0.0 if self.measured == 0 else math.inf


def _xi_fd_columns(a, xi0, sigma, tau, alpha, beta):
    """``d_x^alpha d_xi^beta a~`` at lattice points ``xi0`` by central differences in xi."""
    d = a.grid.d
    if not any(beta):
        return conjugated_columns(a, xi0, sigma, tau, alpha)
    scale = bracket(xi0)[:, None]
    parts = []
    for axis, b in enumerate(beta):
        if b:
            h = fd_step(b, 1.0)
            parts.append([((-1) ** j * math.comb(b, j) / h**b, axis, (b / 2 - j) * h) for j in range(b + 1)])
    total = 0.0
    for combo in itertools.product(*parts):
        shift = np.zeros(d)
        w = 1.0
        for c, axis, off in combo:
            shift[axis] += off
            w *= c
        total = total + w * conjugated_columns(a, xi0 + shift * scale, sigma, tau, alpha)
    return total / (scale[:, 0] ** sum(beta))[None, :]


def conjugated_seminorm_measure(a: SampledSymbol, alpha, beta, sigma: float, tau: float) -> float:
    """``sup_{x in B, xi} |<xi>^(-m + |beta|) d_x^alpha d_xi^beta a~(x, xi)|`` on the grid."""
    if a.evaluator is None:
        raise SymbolError("xi-derivatives of the conjugated symbol need an evaluator")
    grid = a.grid
    xi0 = grid.frequencies().reshape(-1, grid.d)
    cols = _xi_fd_columns(a, xi0, sigma, tau, tuple(alpha), tuple(beta))
    inside = a.support_mask().reshape(-1)
    weight = bracket(xi0) ** (-a.params.m + sum(beta))
    return float(np.max(np.abs(cols[inside]) * weight[None, :]))


def lemma51_bound_check(a: SampledSymbol, alpha, beta, tau: float, tau_bar: float,
                        sigma: float | None = None, alpha_max: int = 4) -> EnvelopeReport:
    """Measured conjugated-symbol seminorm against the bound curve (constant factor not fitted).

    ``bound_curve = |B|^(1/2) C(tau_bar R^(1/s)/s) S (tau_bar - |tau|)^(-(2|beta| + |alpha|)/sigma)``
    with ``S = max over beta_2 <= beta, alpha' <= alpha_max of |a|_{alpha',beta_2}``.
    """
    p = a.params
    sigma = 1.0 / p.s if sigma is None else sigma
    if not abs(tau) < tau_bar:
        raise ValueError(f"need |tau| < tau_bar, got tau={tau}, tau_bar={tau_bar}")
    measured = conjugated_seminorm_measure(a, alpha, beta, sigma, tau)
    # the Leibniz split puts every beta_2 <= beta on a, not only beta itself
    sub_betas = itertools.product(*(range(b + 1) for b in beta))
    sup_ab = max(estimate_seminorm(a, al, b2) for b2 in sub_betas for na in range(alpha_max + 1)
                 for al in multi_indices(a.grid.d, na))
    order = (2 * sum(beta) + sum(alpha)) / sigma
    curve = (math.sqrt(a.support_measure) * embedding_constant(p.s, p.R, tau_bar) * sup_ab
             * (tau_bar - abs(tau)) ** (-order))
    return EnvelopeReport(measured, curve, tau, tau_bar)


@dataclass(frozen=True)
class EnvelopeFit:
    c_fit: float
    reports: tuple
    held_out: tuple

    @property
    def holds(self) -> bool:
        return all(r.ratio <= self.c_fit * (1 + 1e-9) for r in self.reports + self.held_out)


def lemma51_envelope(a: SampledSymbol, alpha, beta, tau_bar: float, gaps, held_out=(),
                     sigma: float | None = None) -> EnvelopeFit:
    """Fit one constant on the ``gaps = tau_bar - tau`` sweep; check it on ``held_out`` gaps."""
    reps = tuple(lemma51_bound_check(a, alpha, beta, tau_bar - g, tau_bar, sigma) for g in gaps)
    c_fit = max(r.ratio for r in reps)
    extra = tuple(lemma51_bound_check(a, alpha, beta, tau_bar - g, tau_bar, sigma) for g in held_out)
    return EnvelopeFit(c_fit, reps, extra)


def exponential_factor_ratios(sigma: float, tau: float, order: int, xi, eta) -> np.ndarray:
    """``|d_xi^order e(xi, eta)| / (<xi>^-order <eta>^(2 order) e(xi, eta))`` for ``e = exp(tau(<xi+eta>^sigma - <xi>^sigma))``.

    One-dimensional; the derivative is a central finite difference.
    """
    xi = np.asarray(xi, float)
    eta = np.asarray(eta, float)

    def e(z):
        return np.exp(tau * ((1 + (z + eta) ** 2) ** (sigma / 2) - (1 + z**2) ** (sigma / 2)))

    h = fd_step(order, 1.0) * np.sqrt(1 + xi**2)
    deriv = sum((-1) ** j * math.comb(order, j) * e(xi + (order / 2 - j) * h) for j in range(order + 1)) / h**order
    return np.abs(deriv) / ((1 + xi**2) ** (-order / 2) * (1 + eta**2) ** order * e(xi))


# ---------------------------------------------------------------------------
# asymptotic expansion


@dataclass(frozen=True)
class ExpansionReport:
    k: int
    xi_samples: tuple
    remainder_samples: tuple
    fitted_order: float
    predicted_order: float
    sign: int


def _grad_bracket_power(xi: np.ndarray, sigma: float) -> np.ndarray:
    """``d_{xi_i} <xi>^sigma = sigma xi_i <xi>^(sigma - 2)``, shape ``xi.shape``."""
    return sigma * xi * (bracket(xi) ** (sigma - 2))[..., None]


def expansion_partial_sum(a: SampledSymbol, k: int, sigma: float, tau: float, sign: int = -1) -> np.ndarray:
    """``sum_{|alpha| <= k} ((sign i)^|alpha| / alpha!) d_x^alpha a (tau d_xi <xi>^sigma)^alpha``.

    x-derivatives are spectral derivatives of the sampled symbol; the powers
    of ``tau d_xi <xi>^sigma`` are taken componentwise and evaluated exactly.
    """
    grid = a.grid
    d = grid.d
    xi = grid.frequencies()
    grad = tau * _grad_bracket_power(xi, sigma)  # shape grid.shape + (d,)
    ahat = a.x_spectrum()
    theta = grid.frequencies().reshape(grid.shape + (1,) * d + (d,))
    total = np.zeros(grid.shape * 2, dtype=complex)
    for n in range(k + 1):
        for alpha in multi_indices(d, n):
            al = np.asarray(alpha)
            dx = ifft_coefficients(grid, ahat * np.prod((1j * theta) ** al, axis=-1), axes=tuple(range(d)))
            coef = (sign * 1j) ** n / np.prod([math.factorial(x) for x in alpha])
            factor = np.prod(grad**al, axis=-1).reshape((1,) * d + grid.shape)
            total = total + coef * dx * factor
    return total


def expansion_sign(grid: GridSpec, sigma: float, tau: float, m: float = 0.0) -> int:
    """Sign ``c`` in ``(c i)^alpha`` fixed by an x-linear-phase probe ``exp(i theta x) <xi>^m``.

    The conjugated symbol of the probe is known in closed form; the sign whose
    first-order expansion matches it better is returned.
    """
    from .symbols import FunctionEvaluator, symbol_from_evaluator

    theta = np.zeros(grid.d)
    theta[0] = grid.dual_spacing
    probe = symbol_from_evaluator(
        grid, FunctionEvaluator(lambda x, xi: np.exp(1j * (x @ theta)) * bracket(xi) ** m),
        SymbolClassParams(m, 1.0, 0.0, 2.0, 1.0))
    exact = conjugated_symbol(probe, sigma, tau).values
    errs = {}
    for sign in (1, -1):
        errs[sign] = float(np.max(np.abs(exact - expansion_partial_sum(probe, 1, sigma, tau, sign))))
    return min(errs, key=errs.get)


def predicted_remainder_order(m: float, k: int, sigma: float) -> float:
    return max(m - (k + 1) * (1 - sigma), m - 2 + sigma)


def expansion_remainder(a: SampledSymbol, k: int, sigma: float, tau: float,
                        octaves: int = 3) -> ExpansionReport:
    """Fit ``sup_x |a~ - partial sum| ~ <xi>^p`` over the top ``octaves`` of the lattice."""
    if not 0 <= k <= 3:
        raise ValueError(f"truncation order must lie in 0..3, got {k}")
    grid = a.grid
    br = grid.brackets.reshape(-1)
    top = br.max()
    sel = br >= top / 2**octaves
    lowest = sel & (br < top / 2 ** (octaves - 1))
    if np.count_nonzero(lowest) < 4 or top / 2**octaves < 2:
        raise ValueError(f"lattice too short for a stable fit over {octaves} dyadic octaves")
    sign = expansion_sign(grid, sigma, tau, a.params.m)
    tilde = conjugated_symbol(a, sigma, tau).values
    rem = tilde - expansion_partial_sum(a, k, sigma, tau, sign)
    sup = np.max(np.abs(rem.reshape(grid.size, grid.size)), axis=0)
    xs, ys = br[sel], sup[sel]
    if np.any(ys <= 0):
        # exact expansion: nothing to fit
        return ExpansionReport(k, tuple(xs), tuple(ys), -math.inf, predicted_remainder_order(a.params.m, k, sigma), sign)
    slope = float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
    return ExpansionReport(k, tuple(xs), tuple(ys), slope, predicted_remainder_order(a.params.m, k, sigma), sign)


__all__ = [
    "Region", "ConjugationParams", "apply_weight", "conjugated_multiply", "conjugation_kernel_sum",
    "multiplication_sample", "classify_region", "classify_regions", "region_predicates", "choose_K",
    "weight_W", "conjugated_symbol", "conjugated_columns", "conjugation_identity_error",
    "expansion_partial_sum", "expansion_sign", "predicted_remainder_order", "exponential_factor_ratios",
    "log_region_bounds", "log_weight", "region_coefficients", "weight_l2_eta", "WeightReport", "MultiplicationSample",
    "fitted_multiplication_constant", "conjugated_seminorm_measure", "EnvelopeFit", "EnvelopeReport", "ExpansionReport", "lemma51_bound_check", "lemma51_envelope", "expansion_remainder",
]
