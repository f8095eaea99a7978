"""h-quantizations of sampled symbols and empirical action norms.

``op_h(a) u(x) = (2 pi)^-d int int exp(i (x - y) . eta) a(x - h (x - y), eta) u(y) dy deta``.

With ``a(z, eta) = sum_theta a^(theta, eta) exp(i theta . z)`` and periodic
``u`` the y-integral forces ``eta = zeta + h theta``, which gives::

    F(op_h(a) u)(xi) = sum_zeta a^(xi - zeta, h xi + (1 - h) zeta) u^(zeta)

For ``h = p/q`` the symbol is therefore needed on the frequency lattice
refined by ``q``; away from ``h = 0`` that takes an evaluator.  The direct
quadrature realises the same integral with ``y`` running over ``q`` periods
and ``eta`` over the refined lattice, so both routes coincide on inputs whose
combined bandwidth stays below the Nyquist frequency.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gevrey import check_weight, embedding_constant, embedding_threshold, fourier_gevrey_norm
from .grid import GridError, GridSpec, SampledFunction, fft_coefficients
from .symbols import SampledSymbol, SymbolError, sup_alpha_seminorm

MAX_DENOMINATOR = 64


class QuantizationError(ValueError):
    pass


class HypothesisError(ValueError):
    """A parameter violates a hypothesis of the action estimate."""


@dataclass(frozen=True)
class QuantizationScheme:
    h: float

    def __post_init__(self):
        if not 0 <= self.h <= 1:
            raise QuantizationError(f"h must lie in [0, 1], got {self.h}")

    @property
    def fraction(self) -> Fraction:
        return rational_h(self.h)

    @property
    def fast_path(self) -> bool:
        q = self.fraction.denominator
        return self.h < 1 and q & (q - 1) == 0


def rational_h(h: float) -> Fraction:
    frac = Fraction(h)
    if frac.denominator > MAX_DENOMINATOR:
        approx = frac.limit_denominator(MAX_DENOMINATOR)
        if abs(float(approx) - h) > 1e-14:
            raise QuantizationError(f"h={h} is incommensurable with the lattice (denominator > {MAX_DENOMINATOR})")
        frac = approx
    return frac


def _refined_lattice(grid: GridSpec, q: int) -> tuple[np.ndarray, np.ndarray]:
    """Integer wavenumbers and physical frequencies of the ``q``-refined lattice, flattened."""
    k1 = np.arange(-q * grid.N // 2, q * grid.N // 2)
    ks = np.stack(np.meshgrid(*([k1] * grid.d), indexing="ij"), -1).reshape(-1, grid.d)
    return ks, ks * (grid.dual_spacing / q)


def symbol_on_refined_lattice(a: SampledSymbol, q: int) -> np.ndarray:
    """``a(x_j, eta)`` for ``eta`` on the ``q``-refined lattice, shape ``(N^d, (qN)^d)``."""
    grid = a.grid
    if q == 1:
        return a.values.reshape(grid.size, grid.size)
    if a.evaluator is None:
        raise QuantizationError(f"h with denominator {q} needs symbol values off the lattice; "
                                "attach an evaluator")
    _, eta = _refined_lattice(grid, q)
    x = grid.points().reshape(-1, 1, grid.d)
    return np.broadcast_to(a.evaluate(x, eta[None, :, :]), (grid.size, len(eta)))


def _check_operands(a: SampledSymbol, u: SampledFunction) -> GridSpec:
    if a.grid != u.grid:
        raise GridError("symbol and function live on different grids")
    return a.grid


def quantize_direct(a: SampledSymbol, u: SampledFunction, h: float) -> SampledFunction:
    """Slow double-sum realisation of ``op_h(a) u`` on the grid points."""
    grid = _check_operands(a, u)
    QuantizationScheme(h)
    frac = rational_h(h)
    q = frac.denominator
    d, N = grid.d, grid.N
    # y over q periods, eta over the q-refined lattice
    l1 = np.arange(q * N)
    ls = np.stack(np.meshgrid(*([l1] * d), indexing="ij"), -1).reshape(-1, d)
    y = grid.x[0] + grid.spacing * ls
    u_ext = u.values[tuple((ls % N).T)]
    _, eta = _refined_lattice(grid, q)
    x = grid.points().reshape(-1, d)
    weight = 1.0 / (q * N) ** d
    out = np.empty(grid.size, dtype=complex)
    on_lattice = q == 1
    vals = a.values.reshape(grid.size, grid.size) if on_lattice else None
    y_rows = np.ravel_multi_index(tuple((ls % N).T), grid.shape)
    for j in range(grid.size):
        xj = x[j]
        if on_lattice and h == 0:
            amp = vals[j][None, :]
        elif on_lattice:
            # h = 1 samples the symbol at the grid points y
            amp = vals[y_rows]
        else:
            z = xj + h * (y - xj)
            amp = a.evaluate(z[:, None, :], eta[None, :, :])
        phase = np.exp(1j * ((xj - y) @ eta.T))
        out[j] = weight * np.sum(phase * amp * u_ext[:, None])
    return SampledFunction(grid, out.reshape(grid.shape))


def _wavenumbers(grid: GridSpec) -> np.ndarray:
    return np.stack(np.meshgrid(*([grid.k] * grid.d), indexing="ij"), -1).reshape(-1, grid.d)


def _flat_index(k: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened C-order index of centred wavenumbers on an ``n``-point axis, plus validity."""
    idx = k + n // 2
    valid = np.all((idx >= 0) & (idx < n), axis=-1)
    idx = np.clip(idx, 0, n - 1)
    flat = np.zeros(idx.shape[:-1], dtype=np.int64)
    for axis in range(idx.shape[-1]):
        flat = flat * n + idx[..., axis]
    return flat, valid


def _kernel_apply(ahat: np.ndarray, uhat: np.ndarray, grid: GridSpec, p: int, q: int,
                  input_argument: bool = True) -> np.ndarray:
    """``sum_zeta ahat(xi - zeta, (p xi + (q - p) zeta) / q) uhat(zeta)`` on the lattice.

    ``ahat`` has shape ``(N^d, (qN)^d)``: x-frequency, refined xi-argument.
    With ``input_argument=False`` (``h = 0`` only) the frequency argument is
    the output ``xi`` instead of the input ``zeta``.
    """
    k = _wavenumbers(grid)
    theta = k[:, None, :] - k[None, :, :]
    t_idx, t_ok = _flat_index(theta, grid.N)
    if input_argument:
        eta = p * k[:, None, :] + (q - p) * k[None, :, :]
    else:
        eta = np.broadcast_to(q * k[:, None, :], theta.shape)
    e_idx, e_ok = _flat_index(eta, q * grid.N)
    kern = np.where(t_ok & e_ok, ahat[t_idx, e_idx], 0.0)
    return kern @ uhat.reshape(-1)


def quantize_fourier_h0(a: SampledSymbol, u: SampledFunction, *, input_argument: bool = True) -> SampledFunction:
    """``op_0(a) u`` through ``F(op_0(a) u)(xi) = sum_eta a^(xi - eta, eta) u^(eta)``.

    Output frequencies outside the lattice are dropped rather than aliased.
    ``input_argument=False`` evaluates the kernel as ``a^(xi - eta, xi)``
    instead, kept for comparison with the direct quadrature.
    """
    grid = _check_operands(a, u)
    ahat = a.x_spectrum().reshape(grid.size, grid.size)
    spec = _kernel_apply(ahat, u.spectrum, grid, 0, 1, input_argument)
    return SampledFunction.from_spectrum(grid, spec.reshape(grid.shape))


def quantize_fourier_h(a: SampledSymbol, u: SampledFunction, h: float) -> SampledFunction:
    """``op_h(a) u`` on the Fourier side for dyadic ``h`` in ``(0, 1)``.

    Uses the constraint ``eta = h xi + (1 - h) zeta``; non-dyadic rational
    ``h`` falls back to :func:`quantize_direct`.
    """
    grid = _check_operands(a, u)
    if not 0 < h < 1:
        raise QuantizationError(f"the Fourier-side path needs h in (0, 1), got {h}")
    scheme = QuantizationScheme(h)
    if not scheme.fast_path:
        return quantize_direct(a, u, h)
    frac = scheme.fraction
    p, q = frac.numerator, frac.denominator
    vals = symbol_on_refined_lattice(a, q)
    ahat = fft_coefficients(grid, vals.reshape(grid.shape + (-1,)), axes=tuple(range(grid.d)))
    ahat = ahat.reshape(grid.size, -1)
    spec = _kernel_apply(ahat, u.spectrum, grid, p, q)
    return SampledFunction.from_spectrum(grid, spec.reshape(grid.shape))


def quantize(a: SampledSymbol, u: SampledFunction, h: float = 0.0) -> SampledFunction:
    """``op_h(a) u`` by the fastest available route."""
    if h == 0:
        return quantize_fourier_h0(a, u)
    if h == 1:
        return quantize_direct(a, u, h)
    return quantize_fourier_h(a, u, h)


# ---------------------------------------------------------------------------
# operator norms


@dataclass(frozen=True)
class OperatorNormReport:
    empirical_norm: float
    bound: float
    sample_count: int
    sigma: float
    tau: float
    tau_prime: float
    ratios: tuple = ()


def gevrey_random_input(grid: GridSpec, rng: np.random.Generator, sigma: float, tau: float,
                        band: int) -> SampledFunction:
    """Random spectrum ``exp(-tau <xi>^sigma) g`` on wavenumbers ``|k|_inf <= band``.

    The Gaussian draws are indexed by wavenumber, so a fixed generator state
    gives the same function on every grid with the same period.
    """
    if not 0 < band < grid.N // 2:
        raise QuantizationError(f"band {band} must lie in (0, N/2)")
    box = (2 * band + 1,) * grid.d
    g = rng.normal(size=box) + 1j * rng.normal(size=box)
    spec = np.zeros(grid.shape, dtype=complex)
    sl = tuple(slice(grid.N // 2 - band, grid.N // 2 + band + 1) for _ in range(grid.d))
    br = grid.brackets[sl]
    spec[sl] = np.exp(-tau * br**sigma) * g
    return SampledFunction.from_spectrum(grid, spec)


def check_action_hypotheses(a: SampledSymbol, sigma: float, tau: float, tau_prime: float) -> None:
    p = a.params
    if not tau_prime < tau:
        raise HypothesisError(f"loss of radius needs tau' < tau, got tau'={tau_prime}, tau={tau}")
    thr = embedding_threshold(p.s, p.R)
    if not tau < thr:
        raise HypothesisError(f"needs tau < s R^(-1/s) = {thr}, got tau={tau}")
    if not sigma <= (1 - p.delta) / p.s + 1e-15:
        raise HypothesisError(f"needs sigma <= (1 - delta)/s = {(1 - p.delta) / p.s}, got sigma={sigma}")
    if not sigma > 0:
        raise HypothesisError("sigma must be positive")


def action_bound(a: SampledSymbol, tau: float, alpha_max: int = 4) -> float:
    """``|B|^(1/2) C(tau R^(1/s) / s) sup_alpha |a|_{alpha,0}``."""
    p = a.params
    return (math.sqrt(a.support_measure) * embedding_constant(p.s, p.R, tau)
            * sup_alpha_seminorm(a, alpha_max))


def estimate_action_norm(a: SampledSymbol, sigma: float, tau: float, tau_prime: float,
                         n_samples: int, rng: np.random.Generator | int = 0, band: int | None = None,
                         check_hypotheses: bool = True, with_bound: bool = True,
                         alpha_max: int = 4) -> OperatorNormReport:
    """Largest ``|op_0(a) u|_{sigma,tau'} / |u|_{sigma,tau}`` over random Gevrey inputs."""
    if check_hypotheses:
        check_action_hypotheses(a, sigma, tau, tau_prime)
    grid = a.grid
    check_weight(grid, sigma, max(tau, tau_prime))
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    band = grid.N // 4 if band is None else band
    ratios = []
    for _ in range(n_samples):
        u = gevrey_random_input(grid, rng, sigma, tau, band)
        out = quantize_fourier_h0(a, u)
        ratios.append(fourier_gevrey_norm(out, sigma, tau_prime) / fourier_gevrey_norm(u, sigma, tau))
    bound = math.nan
    if with_bound:
        try:
            bound = action_bound(a, tau, alpha_max)
        except (ValueError, SymbolError):
            bound = math.inf
    return OperatorNormReport(max(ratios, default=0.0), bound, n_samples, sigma, tau, tau_prime, tuple(ratios))


def radius_gain_diagnostic(a: SampledSymbol, sigma: float, tau: float, tau_prime: float,
                           bands, n_samples: int, seed: int = 0) -> list[float]:
    """Empirical ratios for increasing input band limits with hypotheses unchecked.

    With ``tau' > tau`` these grow without bound as the band widens.  Single
    modes at the band edge join the random inputs, which keeps the growth
    from depending on the draw.
    """
    grid = a.grid
    out = []
    for band in bands:
        rep = estimate_action_norm(a, sigma, tau, tau_prime, n_samples, np.random.default_rng(seed),
                                   band=band, check_hypotheses=False, with_bound=False)
        best = rep.empirical_norm
        for axis in range(grid.d):
            for sign in (1, -1):
                idx = [grid.N // 2] * grid.d
                idx[axis] += sign * band
                spec = np.zeros(grid.shape, dtype=complex)
                spec[tuple(idx)] = 1.0
                u = SampledFunction.from_spectrum(grid, spec)
                ratio = fourier_gevrey_norm(quantize_fourier_h0(a, u), sigma, tau_prime) / fourier_gevrey_norm(u, sigma, tau)
                best = max(best, ratio)
        out.append(best)
    return out


def apply_multiplier(u: SampledFunction, mult: np.ndarray) -> SampledFunction:
    return SampledFunction.from_spectrum(u.grid, mult * u.spectrum)


__all__ = [
    "QuantizationScheme", "OperatorNormReport", "quantize_direct", "quantize_fourier_h0",
    "quantize_fourier_h", "quantize", "estimate_action_norm", "radius_gain_diagnostic",
    "gevrey_random_input", "symbol_on_refined_lattice",
]
