"""Centered sampling grids and discrete Fourier transforms on them.

Functions are sampled on the centered lattice x_k = (k - n/2) * step,
k = 0..n-1, one axis per coordinate.  The forward transform along an axis is
the Riemann-sum Fourier integral

    F(xi_m) = sum_k f(x_k) exp(-2 pi i xi_m x_k) * step,

evaluated exactly by an FFT between shifted index conventions; the frequency
axis is again centered, with step 1 / (n * step).  A grid whose frequency
lattice coincides with its space lattice (n * step^2 = 1, i.e. n = 4 T^2 for
half-width T) is called self-dual; transforms then map a grid to itself.

Quadrature, norms and inner products all carry the lattice weight, so the
discrete Parseval identity holds exactly on every grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

#: relative outer-shell mass below which a sampled function counts as decayed
DECAY_FLAG_LEVEL = 1e-10


@dataclass(frozen=True)
class Axis:
    """One centered sampling axis: n points spaced by step."""

    n: int
    step: float

    def __post_init__(self):
        if self.n < 2 or self.n % 2 != 0:
            raise ValueError(f"axis needs an even number of points >= 2, got {self.n}")
        if not self.step > 0.0:
            raise ValueError(f"axis step must be positive, got {self.step}")

    def points(self) -> np.ndarray:
        return (np.arange(self.n) - self.n // 2) * self.step

    @property
    def extent(self) -> float:
        """Half-width T: points cover [-T, T)."""
        return self.n * self.step / 2.0

    def dual(self) -> "Axis":
        return Axis(self.n, 1.0 / (self.n * self.step))

    def close_to(self, other: "Axis", rtol: float = 1e-9) -> bool:
        return self.n == other.n and math.isclose(self.step, other.step, rel_tol=rtol)

    @property
    def is_selfdual(self) -> bool:
        return math.isclose(self.n * self.step * self.step, 1.0, rel_tol=1e-9)


@dataclass(frozen=True)
class Grid:
    """A tensor product of centered axes."""

    axes: tuple[Axis, ...]

    def __post_init__(self):
        if not self.axes:
            raise ValueError("grid needs at least one axis")
        object.__setattr__(self, "axes", tuple(self.axes))

    # -- constructors ----------------------------------------------------

    @classmethod
    def regular(cls, d: int, n: int, extent: float) -> "Grid":
        """Isotropic grid: d axes, n points each (a power of two), half-width extent."""
        if d < 1:
            raise ValueError(f"dimension must be positive, got {d}")
        if n < 8 or (n & (n - 1)) != 0:
            raise ValueError(f"samples per axis must be a power of two >= 8, got {n}")
        if not extent > 0.0:
            raise ValueError(f"extent must be positive, got {extent}")
        return cls((Axis(n, 2.0 * extent / n),) * d)

    @classmethod
    def selfdual(cls, d: int, n: int) -> "Grid":
        """Isotropic grid with coinciding space and frequency lattices (T = sqrt(n)/2)."""
        return cls.regular(d, n, math.sqrt(n) / 2.0)

    # -- geometry --------------------------------------------------------

    @property
    def d(self) -> int:
        return len(self.axes)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(ax.n for ax in self.axes)

    @property
    def weight(self) -> float:
        """Quadrature weight of one lattice cell."""
        out = 1.0
        for ax in self.axes:
            out *= ax.step
        return out

    @property
    def is_selfdual(self) -> bool:
        return all(ax.is_selfdual for ax in self.axes)

    def meshgrid(self) -> list[np.ndarray]:
        return np.meshgrid(*(ax.points() for ax in self.axes), indexing="ij")

    def coords(self) -> np.ndarray:
        """Stacked coordinates, shape (d, *shape)."""
        return np.stack(self.meshgrid())

    def dualized(self, axes: Iterable[int]) -> "Grid":
        """Replace the given 0-based axes by their frequency duals."""
        which = set(axes)
        return Grid(tuple(ax.dual() if i in which else ax for i, ax in enumerate(self.axes)))

    def close_to(self, other: "Grid", rtol: float = 1e-9) -> bool:
        return self.d == other.d and all(
            a.close_to(b, rtol) for a, b in zip(self.axes, other.axes)
        )


class GridFunction:
    """Complex samples of a function on a grid; values are read-only."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: Grid, values: np.ndarray):
        values = np.asarray(values, dtype=complex)
        if values.shape != grid.shape:
            raise ValueError(f"values shape {values.shape} does not match grid shape {grid.shape}")
        values = values.copy()
        values.flags.writeable = False
        self.grid = grid
        self.values = values

    @classmethod
    def sample(cls, grid: Grid, fn: Callable[..., np.ndarray]) -> "GridFunction":
        """Sample ``fn(x1, ..., xd)`` on the lattice (vectorized over meshgrids)."""
        return cls(grid, np.asarray(fn(*grid.meshgrid()), dtype=complex))

    def with_values(self, values: np.ndarray, grid: Grid | None = None) -> "GridFunction":
        return GridFunction(self.grid if grid is None else grid, values)

    @property
    def decay_ok(self) -> bool:
        """Whether the outermost index shell is negligible relative to the peak.

        Wrap-around artifacts of lattice translations and transforms are
        controlled exactly when this holds.
        """
        peak = float(np.abs(self.values).max(initial=0.0))
        if peak == 0.0:
            return True
        shell = 0.0
        for ax in range(self.grid.d):
            sl = [slice(None)] * self.grid.d
            for edge in (0, -1):
                sl[ax] = edge
                shell = max(shell, float(np.abs(self.values[tuple(sl)]).max(initial=0.0)))
        return shell <= DECAY_FLAG_LEVEL * peak

    def __repr__(self) -> str:
        return f"GridFunction(shape={self.grid.shape})"


# -- transforms -----------------------------------------------------------


def partial_dft(f: GridFunction, axes: Sequence[int]) -> GridFunction:
    """Centered Fourier integral along the given 0-based axes.

    Exact evaluation of the Riemann sum; the output lives on the grid with
    those axes dualized.
    """
    values = f.values
    for ax in axes:
        step = f.grid.axes[ax].step
        values = np.fft.fftshift(
            np.fft.fft(np.fft.ifftshift(values, axes=ax), axis=ax), axes=ax
        ) * step
    return GridFunction(f.grid.dualized(axes), values)


def partial_idft(f: GridFunction, axes: Sequence[int]) -> GridFunction:
    """Inverse of :func:`partial_dft` along the given axes (conjugate kernel)."""
    values = f.values
    new_axes = list(f.grid.axes)
    for ax in axes:
        dual_step = f.grid.axes[ax].step
        n = f.grid.axes[ax].n
        values = np.fft.fftshift(
            np.fft.ifft(np.fft.ifftshift(values, axes=ax), axis=ax), axes=ax
        ) * (n * dual_step)
        new_axes[ax] = f.grid.axes[ax].dual()
    return GridFunction(Grid(tuple(new_axes)), values)


def full_dft(f: GridFunction) -> GridFunction:
    return partial_dft(f, tuple(range(f.grid.d)))


def full_idft(f: GridFunction) -> GridFunction:
    return partial_idft(f, tuple(range(f.grid.d)))


# -- norms and inner products ----------------------------------------------


def lp_norm(f: GridFunction, p: float) -> float:
    """Lattice L^p norm (Riemann sum with the cell weight); p may be inf."""
    if p <= 0.0:
        raise ValueError(f"p must be positive, got {p}")
    mags = np.abs(f.values)
    if math.isinf(p):
        return float(mags.max(initial=0.0))
    return float((np.sum(mags**p) * f.grid.weight) ** (1.0 / p))


def lpq_norm(f: GridFunction, p: float, q: float, split: int | None = None) -> float:
    """Mixed norm: L^p over the first ``split`` axes, then L^q over the rest.

    ``split`` defaults to half the axes (the tensor-slot convention for
    phase-space grids).
    """
    if p <= 0.0 or q <= 0.0:
        raise ValueError(f"exponents must be positive, got p={p}, q={q}")
    d = f.grid.d
    if split is None:
        if d % 2 != 0:
            raise ValueError("mixed norm needs an explicit split for odd-dimensional grids")
        split = d // 2
    if not 0 < split < d:
        raise ValueError(f"split must cut the axes in two nonempty groups, got {split}")
    mags = np.abs(f.values)
    inner_axes = tuple(range(split))
    w_inner = 1.0
    for ax in f.grid.axes[:split]:
        w_inner *= ax.step
    w_outer = f.grid.weight / w_inner

    if math.isinf(p):
        inner = mags.max(axis=inner_axes)
    else:
        inner = (np.sum(mags**p, axis=inner_axes) * w_inner) ** (1.0 / p)
    if math.isinf(q):
        return float(inner.max(initial=0.0))
    return float((np.sum(inner**q) * w_outer) ** (1.0 / q))


def herm_inner(f: GridFunction, g: GridFunction) -> complex:
    """Weighted inner product <f, g> = sum f conj(g) * weight."""
    if not f.grid.close_to(g.grid):
        raise ValueError("inner product requires functions on the same grid")
    return complex(np.sum(f.values * np.conj(g.values)) * f.grid.weight)


def phase_align_distance(f: GridFunction, g: GridFunction) -> float:
    """min over |c| = 1 of ||f - c g||_2 / ||g||_2.

    Compares two sampled functions that are expected to agree up to a global
    unimodular constant.
    """
    norm_g = lp_norm(g, 2.0)
    if norm_g == 0.0:
        raise ValueError("cannot phase-align against the zero function")
    norm_f = lp_norm(f, 2.0)
    overlap = abs(herm_inner(f, g))
    gap = norm_f**2 + norm_g**2 - 2.0 * overlap
    return math.sqrt(max(gap, 0.0)) / norm_g


def outer(f: GridFunction, g: GridFunction) -> GridFunction:
    """Tensor product f (x) g on the concatenated grid."""
    grid = Grid(f.grid.axes + g.grid.axes)
    vals = np.multiply.outer(f.values, g.values)
    return GridFunction(grid, vals)
