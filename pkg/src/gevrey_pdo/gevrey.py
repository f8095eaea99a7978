"""Fourier and spatial Gevrey norms, Sobolev norms and the embedding constant."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, SampledFunction, ifft_coefficients, lattice_l2

#: exponents above this are refused rather than allowed to overflow
EXP_LIMIT = 700.0
#: slack in the upper Stirling bound n! <= e n^(n+1/2) e^(-n) <= (1+delta) sqrt(2 pi n) (n/e)^n
STIRLING_DELTA = 0.09
FD_MAX_ORDER = 8


class WeightOverflowError(ValueError):
    pass


class EmbeddingRangeError(ValueError):
    pass


@dataclass(frozen=True)
class GevreyParams:
    s: float
    R: float
    sigma: float
    tau: float

    def __post_init__(self):
        if not self.s > 1:
            raise ValueError(f"Gevrey index s must exceed 1, got {self.s}")
        if not self.R > 0:
            raise ValueError(f"scale R must be positive, got {self.R}")
        if not 0 < self.sigma <= 1:
            raise ValueError(f"sigma must lie in (0, 1], got {self.sigma}")
        if not self.tau >= 0:
            raise ValueError(f"radius tau must be nonnegative, got {self.tau}")

    @property
    def radius_threshold(self) -> float:
        return embedding_threshold(self.s, self.R)

    def check_embedding(self) -> None:
        if not math.isclose(self.sigma, 1 / self.s, rel_tol=1e-12):
            raise EmbeddingRangeError(f"embedding needs sigma = 1/s, got sigma={self.sigma}, s={self.s}")
        if self.tau >= self.radius_threshold:
            raise EmbeddingRangeError(
                f"tau={self.tau} outside embedding range tau < s R^(-1/s) = {self.radius_threshold}")


@dataclass(frozen=True)
class SeminormEstimate:
    value: float
    orders_checked: int
    method: str
    per_order: tuple = ()


def embedding_threshold(s: float, R: float) -> float:
    return s * R ** (-1.0 / s)


def check_weight(grid: GridSpec, sigma: float, tau: float, what: str = "weight") -> None:
    """Refuse exponents ``|tau| <bracket>^sigma`` above ``EXP_LIMIT`` on ``grid``."""
    peak = abs(tau) * grid.max_bracket**sigma
    if peak > EXP_LIMIT:
        tau_max = EXP_LIMIT / grid.max_bracket**sigma
        raise WeightOverflowError(
            f"{what} overflow: tau*<xi_max>^sigma = {peak:.6g} > {EXP_LIMIT:g}; "
            f"largest admissible |tau| on this grid is {tau_max:.6g}")


def fourier_gevrey_norm(f: SampledFunction, sigma: float, tau: float) -> float:
    """``| exp(tau <.>^sigma) f^ |_{L2}`` on the lattice."""
    if not 0 < sigma <= 1:
        raise ValueError(f"sigma must lie in (0, 1], got {sigma}")
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    check_weight(f.grid, sigma, tau)
    w = np.exp(tau * f.grid.brackets**sigma)
    return lattice_l2(f.grid, w * f.spectrum)


def sobolev_norm(f: SampledFunction, m: float) -> float:
    if m < 0:
        raise ValueError(f"Sobolev order must be nonnegative, got {m}")
    return lattice_l2(f.grid, f.grid.brackets**m * f.spectrum)


def multi_indices(d: int, order: int):
    """All multi-indices in ``N^d`` of length exactly ``order``."""
    for combo in itertools.combinations_with_replacement(range(d), order):
        alpha = [0] * d
        for i in combo:
            alpha[i] += 1
        yield tuple(alpha)


def spectral_derivative(f: SampledFunction, alpha) -> np.ndarray:
    """``d^alpha f`` on the grid by multiplying the spectrum with ``(i xi)^alpha``."""
    grid = f.grid
    mult = np.ones(grid.shape, dtype=complex)
    xi = grid.frequencies()
    for axis, a in enumerate(alpha):
        if a == 0:
            continue
        factor = (1j * xi[..., axis]) ** a
        if a % 2:
            # the Nyquist mode has no symmetric partner
            factor = np.where(grid.k[0] * grid.dual_spacing == xi[..., axis], 0, factor)
        mult = mult * factor
    return ifft_coefficients(grid, mult * f.spectrum)


def fd_step(order: int, scale: float) -> float:
    return np.finfo(float).eps ** (1.0 / (order + 2)) * scale


def _fd_weights(order: int):
    # central k-th difference: sum_j (-1)^j C(k, j) f(x + (k/2 - j) h) / h^k
    return [((-1) ** j * math.comb(order, j), order / 2 - j) for j in range(order + 1)]


def finite_difference(fn, x: np.ndarray, alpha, scale: float) -> np.ndarray:
    """Central finite-difference approximation of ``d^alpha fn`` at points ``x``.

    ``x`` has shape ``(..., d)``; the step for an axis of order ``k`` is
    ``eps^(1/(k+2)) * scale``.
    """
    alpha = tuple(int(a) for a in alpha)
    if max(alpha, default=0) > FD_MAX_ORDER or sum(alpha) > FD_MAX_ORDER:
        raise ValueError(f"finite differences are limited to order {FD_MAX_ORDER}, got {alpha}")
    x = np.asarray(x, dtype=float)
    stencils = []
    for axis, a in enumerate(alpha):
        if a:
            h = fd_step(a, scale)
            stencils.append([(w / h**a, axis, off * h) for w, off in _fd_weights(a)])
    if not stencils:
        return np.asarray(fn(x))
    total = 0.0
    for combo in itertools.product(*stencils):
        shift = np.zeros(x.shape[-1])
        weight = 1.0
        for w, axis, off in combo:
            shift[axis] += off
            weight *= w
        total = total + weight * np.asarray(fn(x + shift))
    return total


def _sup_derivatives(f, alpha, grid, method):
    if method == "spectral":
        return float(np.max(np.abs(spectral_derivative(f, alpha))))
    pts = grid.points()
    if method == "analytic":
        return float(np.max(np.abs(f.derivative(pts, alpha))))
    return float(np.max(np.abs(finite_difference(f, pts, alpha, grid.L))))


def spatial_gevrey_seminorm(f, s: float, R: float, alpha_max: int, grid: GridSpec | None = None,
                            method: str | None = None) -> SeminormEstimate:
    """``max_{|alpha| <= alpha_max} sup_x |d^alpha f| / (R^|alpha| |alpha|!^s)`` over grid points.

    ``f`` may be a :class:`SampledFunction` (spectral derivatives), an object
    with a ``derivative(x, alpha)`` method (analytic derivatives) or a plain
    vectorised callable (central finite differences).  The last two need
    ``grid`` to supply the sample points.
    """
    if R <= 0:
        raise ValueError(f"R must be positive, got {R}")
    if alpha_max < 0:
        raise ValueError("alpha_max must be nonnegative")
    if method is None:
        if isinstance(f, SampledFunction):
            method = "spectral"
        elif hasattr(f, "derivative"):
            method = "analytic"
        else:
            method = "finite_differences"
    if isinstance(f, SampledFunction):
        grid = f.grid
    elif grid is None:
        raise ValueError("a grid is required to sample a callable")
    if method == "finite_differences" and alpha_max > FD_MAX_ORDER:
        raise ValueError(f"alpha_max={alpha_max} exceeds {FD_MAX_ORDER} under finite differences")
    per_order = []
    for k in range(alpha_max + 1):
        sup = max(_sup_derivatives(f, alpha, grid, method) for alpha in multi_indices(grid.d, k))
        per_order.append(sup)
    normalized = [sup / (R**k * math.factorial(k) ** s) for k, sup in enumerate(per_order)]
    return SeminormEstimate(max(normalized), alpha_max, method, tuple(per_order))


def dominating_scale(per_order, s: float) -> float:
    """Smallest ``R`` for which the order-0 term dominates every measured order.

    ``per_order[k]`` is ``sup |d^k f|``; the result makes
    ``per_order[k] / (R^k k!^s) <= per_order[0]`` for all listed ``k``.
    """
    base = per_order[0]
    if base == 0:
        return 1.0
    ratios = [(per_order[k] / (math.factorial(k) ** s * base)) ** (1.0 / k)
              for k in range(1, len(per_order))]
    return max(ratios, default=1.0)


def stirling_constant(s: float) -> float:
    """Explicit ``c_s`` with ``m!^s / n! <= c_s sigma^n n^((3s-1)/2)`` for ``sigma = 1/s``.

    Traced through ``m <= n sigma + 1``:

    * ``m!^s <= (1+delta)^s (2 pi (n sigma+1))^(s/2) ((n sigma+1)/e)^((n sigma+1) s)``
    * ``1/n! <= (1+delta)^s (2 pi n)^(-1/2) (n/e)^(-n)`` (slack kept as displayed)
    * ``((n sigma+1)/e)^((n sigma+1) s) (n/e)^(-n) <= sigma^n (n sigma+1)^s`` since ``s sigma = 1``
    * ``n sigma + 1 <= (1 + sigma) n`` for ``n >= 1``

    giving ``c_s = (1+delta)^(2s) (2 pi)^((s-1)/2) (1 + 1/s)^(3s/2)``.
    """
    sigma = 1.0 / s
    return (1 + STIRLING_DELTA) ** (2 * s) * (2 * math.pi) ** ((s - 1) / 2) * (1 + sigma) ** (1.5 * s)


def polylog_series(p: float, y: float, rtol: float = 1e-12, chunk: int = 4096) -> tuple[float, float]:
    """``1 + sum_{n>=1} n^p y^n`` with a certified bound on the neglected tail.

    Returns ``(partial_sum, tail_bound)`` with ``tail_bound <= rtol * partial_sum``.
    The term ratio ``(1 + 1/n)^p y`` decreases in ``n``, so once it drops
    below one the tail is dominated by a geometric series.
    """
    if not 0 <= y < 1:
        raise ValueError(f"series needs 0 <= y < 1, got {y}")
    total = 1.0
    if y == 0:
        return total, 0.0
    start = 1
    logy = math.log(y)
    while True:
        n = np.arange(start, start + chunk, dtype=float)
        terms = np.exp(p * np.log(n) + n * logy)
        total += float(np.sum(terms))
        nxt = start + chunk
        ratio = (1 + 1 / nxt) ** p * y
        if ratio < 1:
            t_next = math.exp(p * math.log(nxt) + nxt * logy)
            tail = t_next / (1 - ratio)
            if tail <= rtol * total:
                return total, tail
        start = nxt


def embedding_constant(s: float, R: float, tau: float, rtol: float = 1e-12) -> float:
    """``C(y) = e^tau c_s sum_{n>=0} max(n,1)^((3s-1)/2) y^n`` with ``y = tau R^(1/s) / s``."""
    if not s > 1:
        raise ValueError(f"s must exceed 1, got {s}")
    if not R > 0:
        raise ValueError(f"R must be positive, got {R}")
    if tau < 0:
        raise ValueError(f"tau must be nonnegative, got {tau}")
    threshold = embedding_threshold(s, R)
    if tau >= threshold:
        raise EmbeddingRangeError(
            f"tau={tau} outside embedding range: the inclusion needs tau < s R^(-1/s) = {threshold}")
    y = tau * R ** (1.0 / s) / s
    series, _ = polylog_series((3 * s - 1) / 2, y, rtol)
    return math.exp(tau) * stirling_constant(s) * series


@dataclass(frozen=True)
class EmbeddingReport:
    lhs: float
    rhs: float
    margin: float
    constant: float
    seminorm: float

    @property
    def holds(self) -> bool:
        return self.margin >= 0


def verify_embedding(f: SampledFunction, s: float, R: float, tau: float, B_measure: float,
                     seminorm: float | None = None, alpha_max: int = 8) -> EmbeddingReport:
    """Both sides of ``|f|_{1/s,tau} <= |B|^(1/2) C(tau R^(1/s)/s) |f|_{s,R}``.

    The spatial seminorm is measured with spectral derivatives up to
    ``alpha_max`` unless supplied.
    """
    if B_measure <= 0:
        raise ValueError("support measure must be positive")
    const = embedding_constant(s, R, tau)
    if seminorm is None:
        seminorm = spatial_gevrey_seminorm(f, s, R, alpha_max).value
    lhs = fourier_gevrey_norm(f, 1.0 / s, tau)
    rhs = math.sqrt(B_measure) * const * seminorm
    return EmbeddingReport(lhs, rhs, rhs - lhs, const, seminorm)
