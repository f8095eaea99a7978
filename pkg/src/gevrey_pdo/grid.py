"""Periodic grids, frequency lattices and the discrete Fourier transform.

Spatial points live on ``[-L/2, L/2)^d`` and the dual lattice is
``(2*pi/L) * {-N/2, ..., N/2 - 1}`` per axis, stored in increasing order
(zero frequency at index ``N // 2``).  The forward transform carries the
``1/N^d`` factor, so it returns Fourier-series coefficients::

    c_k = N^{-d} sum_j f(x_j) exp(-i xi_k . x_j),   f(x_j) = sum_k c_k exp(i xi_k . x_j)

Norms use ``h^d`` as the spatial quadrature weight and ``L^d`` as the
lattice weight, which makes Plancherel an identity.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np


class GridError(ValueError):
    """Raised for invalid grids or arrays that do not fit a grid."""


@dataclass(frozen=True)
class GridSpec:
    """A uniform periodic grid on ``[-L/2, L/2)^d`` with ``N`` points per axis."""

    d: int
    N: int
    L: float

    def __post_init__(self):
        if not isinstance(self.d, (int, np.integer)) or not 1 <= self.d <= 3:
            raise GridError(f"dimension must be 1, 2 or 3, got {self.d!r}")
        n = self.N
        if not isinstance(n, (int, np.integer)) or n < 4 or n & (n - 1):
            raise GridError(f"N must be a power of two >= 4, got {n!r}")
        if not np.isfinite(self.L) or self.L <= 0:
            raise GridError(f"period L must be positive, got {self.L!r}")

    @property
    def spacing(self) -> float:
        return self.L / self.N

    @property
    def size(self) -> int:
        return self.N**self.d

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.N,) * self.d

    @property
    def dual_spacing(self) -> float:
        return 2 * np.pi / self.L

    @cached_property
    def x(self) -> np.ndarray:
        """1-D axis of spatial points."""
        return -self.L / 2 + self.spacing * np.arange(self.N)

    @cached_property
    def k(self) -> np.ndarray:
        """1-D axis of integer wavenumbers ``-N/2 .. N/2-1``."""
        return np.arange(-self.N // 2, self.N // 2)

    @cached_property
    def xi(self) -> np.ndarray:
        """1-D axis of physical frequencies."""
        return self.dual_spacing * self.k

    def points(self) -> np.ndarray:
        """Spatial points as an array of shape ``shape + (d,)``."""
        return np.stack(np.meshgrid(*([self.x] * self.d), indexing="ij"), axis=-1)

    def frequencies(self) -> np.ndarray:
        """Lattice frequencies as an array of shape ``shape + (d,)``."""
        return np.stack(np.meshgrid(*([self.xi] * self.d), indexing="ij"), axis=-1)

    @cached_property
    def brackets(self) -> np.ndarray:
        """Japanese bracket evaluated on the whole lattice, shape ``shape``."""
        return bracket(self.frequencies())

    @property
    def max_bracket(self) -> float:
        # the corner (-N/2, ..., -N/2) has the largest modulus
        return float(np.sqrt(1.0 + self.d * (self.dual_spacing * self.N / 2) ** 2))

    def index_of(self, k) -> tuple[int, ...]:
        """Array index of the integer wavenumber vector ``k``."""
        k = np.atleast_1d(np.asarray(k, dtype=int))
        if k.shape != (self.d,) or np.any(k < -self.N // 2) or np.any(k >= self.N // 2):
            raise GridError(f"wavenumber {k.tolist()} is not on the lattice")
        return tuple(int(v) + self.N // 2 for v in k)


def make_grid(d: int, N: int, L: float) -> GridSpec:
    return GridSpec(int(d) if isinstance(d, (int, np.integer)) else d,
                    int(N) if isinstance(N, (int, np.integer)) else N, float(L))


def bracket(xi) -> np.ndarray | float:
    """Japanese bracket ``(1 + |xi|^2)^(1/2)`` along the last axis.

    Scalars and 1-D inputs of length one are treated as one-dimensional
    frequencies; otherwise the last axis indexes the components.
    """
    xi = np.asarray(xi, dtype=float)
    if xi.ndim == 0:
        return float(np.sqrt(1.0 + xi * xi))
    return np.sqrt(1.0 + np.sum(xi * xi, axis=-1))


def _signs(grid: GridSpec) -> np.ndarray:
    # exp(i xi_k L/2) = (-1)^k accounts for the grid starting at -L/2
    s = np.where(grid.k % 2 == 0, 1.0, -1.0)
    out = s
    for _ in range(grid.d - 1):
        out = np.multiply.outer(out, s)
    return out


def _check_shape(grid: GridSpec, arr: np.ndarray, what: str) -> np.ndarray:
    arr = np.asarray(arr)
    if arr.shape == grid.shape:
        return arr
    if arr.size == grid.size and arr.ndim == 1:
        return arr.reshape(grid.shape)
    raise GridError(f"{what} of shape {arr.shape} does not match grid shape {grid.shape}")


def fft_coefficients(grid: GridSpec, values: np.ndarray, axes=None) -> np.ndarray:
    """Forward transform over the spatial axes ``axes`` of a raw array."""
    if axes is None:
        axes = tuple(range(grid.d))
    c = np.fft.fftshift(np.fft.fftn(values, axes=axes), axes=axes) / grid.size
    sign = _signs(grid).reshape([grid.N if i in axes else 1 for i in range(values.ndim)])
    return c * sign


def ifft_coefficients(grid: GridSpec, spectrum: np.ndarray, axes=None) -> np.ndarray:
    if axes is None:
        axes = tuple(range(grid.d))
    sign = _signs(grid).reshape([grid.N if i in axes else 1 for i in range(spectrum.ndim)])
    return np.fft.ifftn(np.fft.ifftshift(spectrum * sign, axes=axes), axes=axes) * grid.size


class SampledFunction:
    """Complex samples of a function on a grid, with a lazily cached spectrum."""

    __slots__ = ("grid", "values", "_spectrum")

    def __init__(self, grid: GridSpec, values, spectrum=None):
        self.grid = grid
        self.values = _check_shape(grid, np.asarray(values, dtype=complex), "values")
        self.values.flags.writeable = False
        if spectrum is not None:
            spectrum = _check_shape(grid, np.asarray(spectrum, dtype=complex), "spectrum")
            spectrum.flags.writeable = False
        self._spectrum = spectrum

    @classmethod
    def from_function(cls, grid: GridSpec, fn) -> "SampledFunction":
        """Sample ``fn(x)`` where ``x`` has shape ``grid.shape + (d,)``."""
        return cls(grid, fn(grid.points()))

    @classmethod
    def from_spectrum(cls, grid: GridSpec, spectrum) -> "SampledFunction":
        spectrum = _check_shape(grid, np.asarray(spectrum, dtype=complex), "spectrum")
        return cls(grid, ifft_coefficients(grid, spectrum), spectrum.copy())

    @property
    def spectrum(self) -> np.ndarray:
        if self._spectrum is None:
            spec = fft_coefficients(self.grid, self.values)
            spec.flags.writeable = False
            self._spectrum = spec
        return self._spectrum

    def l2_norm(self) -> float:
        return float(np.sqrt(self.grid.spacing**self.grid.d * np.sum(np.abs(self.values) ** 2)))

    def __repr__(self):
        return f"SampledFunction(grid={self.grid!r})"


def forward_transform(f: SampledFunction) -> np.ndarray:
    return f.spectrum


def inverse_transform(spectrum, grid: GridSpec) -> SampledFunction:
    return SampledFunction.from_spectrum(grid, spectrum)


def lattice_l2(grid: GridSpec, spectrum) -> float:
    """L2 norm of a lattice function with the ``L^d`` lattice weight."""
    return float(np.sqrt(grid.L**grid.d * np.sum(np.abs(spectrum) ** 2)))


def check_same_grid(*items) -> GridSpec:
    grids = {item.grid for item in items}
    if len(grids) != 1:
        raise GridError("operands live on different grids")
    return grids.pop()
