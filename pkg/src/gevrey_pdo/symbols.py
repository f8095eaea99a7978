"""Symbols with Gevrey regularity in x: constructors, seminorms, class checks.

A :class:`SampledSymbol` stores ``a(x_j, xi_k)`` with the spatial axes first
and the frequency axes last, i.e. ``values.shape == grid.shape + grid.shape``.
Symbols may carry an *evaluator*, a vectorised callable ``evaluator(x, xi)``
that broadcasts over leading axes (``x`` and ``xi`` end in an axis of length
``d``).  Evaluators are needed wherever values off the grid or off the
lattice are probed: xi-derivatives at small steps and the ``h > 0``
quantizations.  An evaluator may also expose ``dx(x, xi, alpha)`` returning
exact x-derivatives.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .gevrey import FD_MAX_ORDER, fd_step, finite_difference, multi_indices
from .grid import GridSpec, bracket, fft_coefficients, ifft_coefficients

XI_FD_MAX_ORDER = 4


class SymbolError(ValueError):
    pass


@dataclass(frozen=True)
class SymbolClassParams:
    """Parameters ``(m, rho, delta, s, R)`` of a symbol class.

    ``delta = 0`` is admitted alongside ``0 < delta < rho <= 1``.
    """

    m: float
    rho: float
    delta: float
    s: float
    R: float

    def __post_init__(self):
        if not 0 <= self.delta < self.rho <= 1:
            raise SymbolError(f"need 0 <= delta < rho <= 1, got rho={self.rho}, delta={self.delta}")
        if not self.s > 1:
            raise SymbolError(f"Gevrey index s must exceed 1, got {self.s}")
        if not self.R > 0:
            raise SymbolError(f"R must be positive, got {self.R}")


# ---------------------------------------------------------------------------
# Gevrey bump


def _bump_jets(y: np.ndarray, q: float, order: int) -> np.ndarray:
    """Taylor coefficients of ``exp(-(1 - t^2)^(-q))`` at ``t = y``, shape ``(order+1,) + y.shape``.

    Power-series recurrences: ``w = u^a`` obeys
    ``n u_0 w_n = sum_k (a k - (n - k)) u_k w_{n-k}`` and ``e = exp(g)`` obeys
    ``n e_n = sum_k k g_k e_{n-k}``.
    """
    y = np.asarray(y, dtype=float)
    out = np.zeros((order + 1,) + y.shape)
    u0 = 1.0 - y * y
    inside = u0 > 0
    p0 = np.full(y.shape, np.inf)
    p0[inside] = u0[inside] ** (-q)
    live = inside & (p0 < 690.0)
    if not np.any(live):
        return out
    u = [u0[live], -2.0 * y[live], -np.ones(np.count_nonzero(live))]
    p = [p0[live]]
    for n in range(1, order + 1):
        acc = 0.0
        for k in range(1, min(n, 2) + 1):
            acc = acc + (-q * k - (n - k)) * u[k] * p[n - k]
        p.append(acc / (n * u[0]))
    e = [np.exp(-p[0])]
    for n in range(1, order + 1):
        acc = 0.0
        for k in range(1, n + 1):
            acc = acc - k * p[k] * e[n - k]
        e.append(acc / n)
    for n in range(order + 1):
        out[n][live] = e[n]
    return out


@dataclass(frozen=True)
class GevreyBump:
    """``psi_s(x) = exp(-(1 - |(x - center)/width|^2)^(-1/(s-1)))`` inside the ball, 0 outside."""

    s: float
    center: tuple = (0.0,)
    width: float = 1.0

    def __post_init__(self):
        if not self.s > 1:
            raise SymbolError("analytic bumps (s <= 1) cannot have compact support")
        if not self.width > 0:
            raise SymbolError("bump width must be positive")
        object.__setattr__(self, "center", tuple(np.atleast_1d(np.asarray(self.center, float))))

    @property
    def exponent(self) -> float:
        return 1.0 / (self.s - 1.0)

    def _scaled(self, x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 0 or x.shape[-1] != len(self.center):
            x = x[..., None]
        return (x - np.asarray(self.center)) / self.width

    def __call__(self, x) -> np.ndarray:
        y = self._scaled(x)
        r2 = np.sum(y * y, axis=-1)
        out = np.zeros(r2.shape)
        inside = r2 < 1
        with np.errstate(over="ignore", under="ignore"):
            out[inside] = np.exp(-(1.0 - r2[inside]) ** (-self.exponent))
        return out

    def derivative(self, x, alpha) -> np.ndarray:
        """Exact ``d^alpha psi_s`` (one dimension only)."""
        if len(self.center) != 1:
            raise NotImplementedError("exact bump derivatives are implemented for d = 1")
        k = int(np.sum(alpha))
        y = self._scaled(x)[..., 0]
        jets = _bump_jets(y, self.exponent, k)
        return jets[k] * math.factorial(k) / self.width**k

    def scalar_derivative(self, t, k: int) -> np.ndarray:
        """``psi^(k)`` of the one-dimensional profile at scaled radius points ``t``."""
        return _bump_jets(np.asarray(t, float), self.exponent, k)[k] * math.factorial(k)


def gevrey_bump(s: float, center=0.0, width: float = 1.0) -> GevreyBump:
    return GevreyBump(s, center, width)


# ---------------------------------------------------------------------------
# evaluators


def _wrap(x, L):
    return np.mod(np.asarray(x, float) + L / 2, L) - L / 2


class CanonicalEvaluator:
    """``<xi>^m psi_s(<xi>^delta x / r)`` with x taken periodically."""

    def __init__(self, params: SymbolClassParams, r: float, L: float):
        self.params = params
        self.r = r
        self.L = L
        self.bump = GevreyBump(params.s, (0.0,), 1.0)

    def _arg(self, x, xi):
        br = bracket(xi)
        y = _wrap(x, self.L) * (br**self.params.delta / self.r)[..., None]
        return br, y

    def __call__(self, x, xi):
        br, y = self._arg(x, xi)
        r2 = np.sum(y * y, axis=-1)
        out = np.zeros(np.broadcast_shapes(r2.shape, br.shape))
        inside = np.broadcast_to(r2 < 1, out.shape)
        with np.errstate(over="ignore", under="ignore"):
            vals = np.exp(-(1.0 - np.broadcast_to(r2, out.shape)[inside]) ** (-self.bump.exponent))
        out[inside] = vals
        return out * br**self.params.m

    def dx(self, x, xi, alpha):
        if len(alpha) != 1:
            raise NotImplementedError("exact x-derivatives are implemented for d = 1")
        k = int(alpha[0])
        br, y = self._arg(x, xi)
        jets = _bump_jets(y[..., 0], self.bump.exponent, k)
        scale = (br**self.params.delta / self.r) ** k
        return jets[k] * math.factorial(k) * scale * br**self.params.m


class SeparableEvaluator:
    """``sum_p f_p(x) g_p(xi)`` with ``f_p`` trigonometric polynomials in x.

    ``modes`` lists integer wavenumber vectors, ``coeffs[p, j]`` the
    coefficient of ``exp(i (2 pi / L) modes[j] . x)`` in ``f_p`` and
    ``xi_factors[p]`` the callable ``g_p``.
    """

    def __init__(self, L: float, modes, coeffs, xi_factors):
        self.L = L
        self.modes = np.atleast_2d(np.asarray(modes, float))
        self.coeffs = np.asarray(coeffs, complex)
        self.xi_factors = list(xi_factors)

    def _x_parts(self, x, alpha=None):
        x = np.asarray(x, float)
        theta = 2 * np.pi / self.L * self.modes  # (J, d)
        phase = np.exp(1j * np.tensordot(x, theta, axes=([-1], [1])))  # (..., J)
        if alpha is not None:
            phase = phase * np.prod((1j * theta) ** np.asarray(alpha), axis=-1)
        return np.tensordot(phase, self.coeffs, axes=([-1], [1]))  # (..., P)

    def __call__(self, x, xi):
        fx = self._x_parts(x)
        return sum(fx[..., p] * g(np.asarray(xi, float)) for p, g in enumerate(self.xi_factors))

    def dx(self, x, xi, alpha):
        fx = self._x_parts(x, alpha)
        return sum(fx[..., p] * g(np.asarray(xi, float)) for p, g in enumerate(self.xi_factors))


class FunctionEvaluator:
    """Wrap a plain callable ``fn(x, xi)``; ``dx`` optional."""

    def __init__(self, fn, dx=None):
        self.fn = fn
        if dx is not None:
            self.dx = dx

    def __call__(self, x, xi):
        return self.fn(np.asarray(x, float), np.asarray(xi, float))


# ---------------------------------------------------------------------------
# sampled symbols


@dataclass(frozen=True, eq=False)
class SampledSymbol:
    grid: GridSpec
    values: np.ndarray
    params: SymbolClassParams
    support_box: tuple
    evaluator: object = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex)
        if vals.shape != self.grid.shape * 2:
            raise SymbolError(f"symbol values of shape {vals.shape} do not match {self.grid.shape * 2}")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)
        box = tuple((float(lo), float(hi)) for lo, hi in self.support_box)
        if len(box) != self.grid.d:
            raise SymbolError("support box needs one interval per dimension")
        object.__setattr__(self, "support_box", box)

    @property
    def support_measure(self) -> float:
        return float(np.prod([hi - lo for lo, hi in self.support_box]))

    def support_mask(self) -> np.ndarray:
        """Boolean mask over the spatial grid of points inside the support box."""
        pts = self.grid.points()
        mask = np.ones(self.grid.shape, dtype=bool)
        for i, (lo, hi) in enumerate(self.support_box):
            mask &= (pts[..., i] >= lo) & (pts[..., i] <= hi)
        return mask

    def outside_support_variation(self) -> float:
        """Largest ``|a(x, xi) - a(x0, xi)|`` with ``x, x0`` outside the support box."""
        outside = ~self.support_mask()
        if not outside.any():
            return 0.0
        vals = self.values[outside]
        return float(np.max(np.abs(vals - vals[:1])))

    def x_spectrum(self) -> np.ndarray:
        """``a^(eta, xi)``: the x-transform, frequency-of-x axes first."""
        return fft_coefficients(self.grid, self.values, axes=tuple(range(self.grid.d)))

    def evaluate(self, x, xi) -> np.ndarray:
        if self.evaluator is None:
            raise SymbolError("symbol has no evaluator for off-grid probes")
        return np.asarray(self.evaluator(x, xi))

    def scaled(self, lam: complex) -> "SampledSymbol":
        ev = None
        if self.evaluator is not None:
            base = self.evaluator
            dx = getattr(base, "dx", None)
            ev = FunctionEvaluator(lambda x, xi: lam * base(x, xi),
                                   (lambda x, xi, a: lam * dx(x, xi, a)) if dx else None)
        return SampledSymbol(self.grid, lam * self.values, self.params, self.support_box, ev, dict(self.meta))


def _grid_lattice(grid: GridSpec):
    d = grid.d
    x = grid.points().reshape(grid.shape + (1,) * d + (d,))
    xi = grid.frequencies().reshape((1,) * d + grid.shape + (d,))
    return x, xi


def symbol_from_evaluator(grid: GridSpec, evaluator, params: SymbolClassParams,
                          support_box=None, meta=None) -> SampledSymbol:
    x, xi = _grid_lattice(grid)
    values = np.broadcast_to(evaluator(x, xi), grid.shape * 2)
    if support_box is None:
        support_box = [(-grid.L / 2, grid.L / 2)] * grid.d
    return SampledSymbol(grid, values, params, support_box, evaluator, dict(meta or {}))


def canonical_symbol(params: SymbolClassParams, grid: GridSpec, r: float | None = None) -> SampledSymbol:
    """``a(x, xi) = <xi>^m psi_s(<xi>^delta x / r)``, supported in ``|x| <= r``.

    The x-Gevrey radius of ``a(., xi)`` shrinks like ``<xi>^(-delta)``.
    """
    if r is None:
        r = grid.L / 4
    if not 0 < r < grid.L / 2:
        raise SymbolError(f"support radius {r} must lie inside half the period {grid.L / 2}")
    ev = CanonicalEvaluator(params, r, grid.L)
    return symbol_from_evaluator(grid, ev, params, [(-r, r)] * grid.d,
                                 {"kind": "canonical", "r": r})


def multiplier_symbol(grid: GridSpec, fn, params: SymbolClassParams | None = None) -> SampledSymbol:
    """x-independent symbol ``a(x, xi) = fn(xi)``."""
    params = params or SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0)
    ev = FunctionEvaluator(lambda x, xi: np.broadcast_to(
        fn(xi), np.broadcast_shapes(x.shape[:-1], xi.shape[:-1])),
        lambda x, xi, a: np.zeros(np.broadcast_shapes(x.shape[:-1], xi.shape[:-1])) if any(a)
        else np.broadcast_to(fn(xi), np.broadcast_shapes(x.shape[:-1], xi.shape[:-1])))
    return symbol_from_evaluator(grid, ev, params, meta={"kind": "multiplier"})


def constant_symbol(grid: GridSpec, c: complex = 1.0) -> SampledSymbol:
    return multiplier_symbol(grid, lambda xi: np.full(xi.shape[:-1], c, dtype=complex))


def random_bandlimited_symbol(grid: GridSpec, rng: np.random.Generator, band: int | None = None,
                              n_terms: int = 3, params: SymbolClassParams | None = None) -> SampledSymbol:
    """Random ``sum_p f_p(x) g_p(xi)`` with ``f_p`` supported on wavenumbers ``|k| <= band``.

    The ``g_p`` are smooth order-zero functions ``<xi>^(-p/2) (b + c cos(w . xi + phi))``.
    """
    d = grid.d
    band = grid.N // 4 if band is None else band
    ks = np.arange(-band, band + 1)
    modes = np.stack(np.meshgrid(*([ks] * d), indexing="ij"), -1).reshape(-1, d)
    coeffs = (rng.normal(size=(n_terms, len(modes))) + 1j * rng.normal(size=(n_terms, len(modes))))
    coeffs /= np.sqrt(len(modes))
    factors = []
    for p in range(n_terms):
        b, c = rng.normal(size=2)
        w = rng.uniform(-1, 1, size=d) * grid.L / (4 * np.pi)
        phi = rng.uniform(0, 2 * np.pi)
        factors.append(_xi_factor(p, b, c, w, phi))
    ev = SeparableEvaluator(grid.L, modes, coeffs, factors)
    params = params or SymbolClassParams(0.0, 1.0, 0.0, 2.0, 1.0)
    return symbol_from_evaluator(grid, ev, params, meta={"kind": "random", "band": band})


def _xi_factor(p, b, c, w, phi):
    def g(xi):
        return bracket(xi) ** (-p / 2) * (b + c * np.cos(np.tensordot(xi, w, axes=([-1], [0])) + phi))
    return g


# ---------------------------------------------------------------------------
# seminorms


def _x_derivative(a: SampledSymbol, alpha, x, xi) -> np.ndarray:
    """``d_x^alpha a`` at the given (broadcast) points via the evaluator."""
    if not any(alpha):
        return np.asarray(a.evaluator(x, xi))
    dx = getattr(a.evaluator, "dx", None)
    if dx is not None:
        try:
            return np.asarray(dx(x, xi, alpha))
        except NotImplementedError:
            pass
    return finite_difference(lambda pts: a.evaluator(pts, xi), x, alpha, a.grid.L)


def _x_derivative_on_grid(a: SampledSymbol, alpha) -> np.ndarray:
    if a.evaluator is not None:
        x, xi = _grid_lattice(a.grid)
        return np.broadcast_to(_x_derivative(a, alpha, x, xi), a.grid.shape * 2)
    if not any(alpha):
        return a.values
    d = a.grid.d
    spec = a.x_spectrum()
    xi = a.grid.frequencies()
    mult = np.prod((1j * xi) ** np.asarray(alpha), axis=-1).reshape(a.grid.shape + (1,) * d)
    return ifft_coefficients(a.grid, spec * mult, axes=tuple(range(d)))


def _mixed_derivative(a: SampledSymbol, alpha, beta) -> tuple[np.ndarray, np.ndarray]:
    """``d_x^alpha d_xi^beta a`` on grid x lattice and a validity mask over the lattice."""
    grid = a.grid
    d = grid.d
    full = np.ones(grid.shape, dtype=bool)
    if not any(beta):
        return _x_derivative_on_grid(a, alpha), full
    if a.evaluator is not None:
        x, xi0 = _grid_lattice(grid)
        # xi-steps scale with <xi> so the stencil resolves the symbol's own variation
        scale = bracket(xi0)
        parts = []
        for axis, b in enumerate(beta):
            if b:
                h = fd_step(b, 1.0)
                parts.append([((-1) ** j * math.comb(b, j) / h**b, axis, (b / 2 - j) * h)
                              for j in range(b + 1)])
        total = 0.0
        for combo in itertools.product(*parts):
            shift = np.zeros(d)
            w = 1.0
            for c, axis, off in combo:
                shift[axis] += off
                w *= c
            total = total + w * _x_derivative(a, alpha, x, xi0 + shift * scale[..., None])
        return np.broadcast_to(total / scale ** sum(beta), grid.shape * 2), full
    # lattice differences on the sampled values: offsets (b/2 - j) * step with
    # step = 2 lattice spacings for odd orders so every probe stays on the lattice
    vals = _x_derivative_on_grid(a, alpha)
    mask = full.copy()
    for axis, b in enumerate(beta):
        if b == 0:
            continue
        ax = d + axis
        stride = 1 if b % 2 == 0 else 2
        h = stride * grid.dual_spacing
        acc = 0.0
        for j in range(b + 1):
            shift = int(round((b / 2 - j) * stride))
            acc = acc + (-1) ** j * math.comb(b, j) * np.roll(vals, -shift, axis=ax)
        vals = acc / h**b
        reach = (b * stride) // 2
        m = np.zeros(grid.shape, dtype=bool)
        sl = [slice(None)] * d
        sl[axis] = slice(reach, grid.N - reach)
        m[tuple(sl)] = True
        mask &= m
    return vals, mask


def _normalizer(a: SampledSymbol, alpha, beta) -> np.ndarray:
    p = a.params
    na, nb = int(sum(alpha)), int(sum(beta))
    br = a.grid.brackets
    return (p.R ** (-(na + nb)) / (math.factorial(na) ** p.s * math.factorial(nb))
            * br ** (-p.m + p.rho * nb - p.delta * na))


def _check_orders(alpha, beta):
    if sum(alpha) > FD_MAX_ORDER:
        raise SymbolError(f"|alpha| = {sum(alpha)} exceeds {FD_MAX_ORDER}")
    if sum(beta) > XI_FD_MAX_ORDER:
        raise SymbolError(f"|beta| = {sum(beta)} exceeds {XI_FD_MAX_ORDER}")


def normalized_derivative(a: SampledSymbol, alpha, beta) -> tuple[np.ndarray, np.ndarray]:
    """Normalised ``|d_x^alpha d_xi^beta a|`` on grid x lattice, plus the lattice mask."""
    alpha, beta = tuple(alpha), tuple(beta)
    _check_orders(alpha, beta)
    vals, mask = _mixed_derivative(a, alpha, beta)
    d = a.grid.d
    norm = _normalizer(a, alpha, beta).reshape((1,) * d + a.grid.shape)
    return np.abs(vals) * norm, mask


def estimate_seminorm(a: SampledSymbol, alpha, beta) -> float:
    """Grid estimate of ``|a|_{alpha, beta}``."""
    vals, mask = normalized_derivative(a, alpha, beta)
    vals = vals.reshape((a.grid.size,) + a.grid.shape)[:, mask]
    return float(np.max(vals)) if vals.size else 0.0


@dataclass
class SeminormTable:
    entries: dict
    orders_checked: tuple
    growth: dict
    bounded: bool
    sup_alpha0: float

    def max_entry(self) -> float:
        return max(self.entries.values(), default=0.0)


def _octave_growth(vals: np.ndarray, mask: np.ndarray, grid: GridSpec) -> float:
    """Power-law growth exponent of the normalised sup between the top two octaves of <xi>."""
    br = grid.brackets
    top = br.max()
    per_xi = vals.reshape((grid.size,) + grid.shape).max(axis=0)
    hi = mask & (br > top / 2)
    lo = mask & (br > top / 4) & (br <= top / 2)
    if not hi.any() or not lo.any():
        return 0.0
    s_hi, s_lo = per_xi[hi].max(), per_xi[lo].max()
    if s_lo == 0:
        return 0.0 if s_hi == 0 else math.inf
    return math.log(max(s_hi, 1e-300) / s_lo) / math.log(2.0)


def validate_class_membership(a: SampledSymbol, alpha_max: int, beta_max: int,
                              growth_tol: float = 0.25) -> SeminormTable:
    """Seminorm table over ``|alpha| <= alpha_max``, ``|beta| <= beta_max``.

    Besides the table, the normalised derivatives are compared between the
    top two frequency octaves; a growth exponent above ``growth_tol`` means
    the declared order is exceeded and the symbol is flagged unbounded.
    """
    d = a.grid.d
    entries, growth = {}, {}
    for na in range(alpha_max + 1):
        for alpha in multi_indices(d, na):
            for nb in range(beta_max + 1):
                for beta in multi_indices(d, nb):
                    vals, mask = normalized_derivative(a, alpha, beta)
                    sel = vals.reshape((a.grid.size,) + a.grid.shape)[:, mask]
                    entries[(alpha, beta)] = float(sel.max()) if sel.size else 0.0
                    growth[(alpha, beta)] = _octave_growth(vals, mask, a.grid)
    finite = all(np.isfinite(v) for v in entries.values())
    bounded = finite and all(g <= growth_tol for g in growth.values())
    zero_beta = tuple([0] * d)
    sup0 = max(v for (al, be), v in entries.items() if be == zero_beta)
    return SeminormTable(entries, (alpha_max, beta_max), growth, bounded, sup0)


def sup_alpha_seminorm(a: SampledSymbol, alpha_max: int = 6, beta=None) -> float:
    """``max_{|alpha| <= alpha_max} |a|_{alpha, beta}`` (``beta = 0`` by default)."""
    beta = tuple([0] * a.grid.d) if beta is None else tuple(beta)
    return max(estimate_seminorm(a, alpha, beta)
               for na in range(alpha_max + 1) for alpha in multi_indices(a.grid.d, na))
