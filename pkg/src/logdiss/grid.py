"""Uniform periodic grids, spectral fields, and radial Fourier multipliers.

The physical domain is the box [-R, R)^dim sampled on n points per axis.
Frequencies carry physical units: the lattice per axis is
{k * pi/R : k in [-n/2, n/2)}, so symbol evaluations are grid independent
and large-domain limits are approached by growing R.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from logdiss.errors import NumericalError

__all__ = [
    "PeriodicGrid",
    "RadialSymbol",
    "SpectralField",
    "make_grid",
    "apply_multiplier",
]

# imaginary residue above this fraction of the field scale means the input
# was not real/even as assumed; below it the residue is transform round-off
IMAG_RESIDUE_GUARD = 1e-8


def _is_power_of_two(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class PeriodicGrid:
    """Uniform periodic grid on [-half_width, half_width)^dim.

    Attributes
    ----------
    dim : int
        Spatial dimension, 1 or 2.
    n : int
        Points per axis (power of two, >= 8).
    half_width : float
        Half the period; the domain is [-half_width, half_width) per axis.
    """

    dim: int
    n: int
    half_width: float

    def __post_init__(self) -> None:
        if self.dim not in (1, 2):
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")
        if not isinstance(self.n, (int, np.integer)) or not _is_power_of_two(int(self.n)) or self.n < 8:
            raise ValueError(f"n must be a power of two >= 8, got {self.n}")
        if not self.half_width > 0:
            raise ValueError(f"half_width must be positive, got {self.half_width}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "half_width", float(self.half_width))

    @property
    def dx(self) -> float:
        return 2.0 * self.half_width / self.n

    @property
    def cell_volume(self) -> float:
        return self.dx**self.dim

    @property
    def freq_step(self) -> float:
        return np.pi / self.half_width

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def x(self) -> np.ndarray:
        """Physical coordinates per axis, from -half_width inclusive."""
        return -self.half_width + self.dx * np.arange(self.n)

    def axis_frequencies(self) -> np.ndarray:
        """Signed frequency lattice for one axis, in FFT storage order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.dx)

    @property
    def xi_norm(self) -> np.ndarray:
        """|xi| on the full lattice (FFT order), computed from signed frequencies."""
        k = self.axis_frequencies()
        if self.dim == 1:
            return np.abs(k)
        kx, ky = np.meshgrid(k, k, indexing="ij")
        return np.sqrt(kx**2 + ky**2)

    def frequency_components(self) -> tuple[np.ndarray, ...]:
        """Signed frequency arrays per axis, broadcast to the grid shape."""
        k = self.axis_frequencies()
        if self.dim == 1:
            return (k,)
        return tuple(np.meshgrid(k, k, indexing="ij"))

    @property
    def dealias_mask(self) -> np.ndarray:
        """2/3-rule mask: True on retained modes."""
        k = self.axis_frequencies()
        cut = (2.0 / 3.0) * np.max(np.abs(k))
        keep = np.abs(k) <= cut
        if self.dim == 1:
            return keep
        mx, my = np.meshgrid(keep, keep, indexing="ij")
        return mx & my

    def meshgrid(self) -> tuple[np.ndarray, ...]:
        """Physical coordinate arrays, broadcast to the grid shape."""
        if self.dim == 1:
            return (self.x,)
        return tuple(np.meshgrid(self.x, self.x, indexing="ij"))


def make_grid(dim: int, n: int, half_width: float) -> PeriodicGrid:
    """Build a periodic grid, rejecting invalid (dim, n, half_width)."""
    return PeriodicGrid(dim=dim, n=n, half_width=half_width)


@dataclass(frozen=True)
class RadialSymbol:
    """A radial Fourier multiplier m(|xi|) with a provenance label.

    ``fn`` must accept a float array of |xi| >= 0 and return a float array
    of the same shape.
    """

    fn: Callable[[np.ndarray], np.ndarray]
    label: str = "symbol"

    def __call__(self, xi_norm) -> np.ndarray:
        xi = np.asarray(xi_norm, dtype=float)
        out = np.asarray(self.fn(xi), dtype=float)
        if out.shape != xi.shape:
            out = np.broadcast_to(out, xi.shape).copy()
        return out

    def __mul__(self, other: "RadialSymbol") -> "RadialSymbol":
        return RadialSymbol(lambda xi: self(xi) * other(xi), f"({self.label})*({other.label})")

    @staticmethod
    def constant(value: float, label: str | None = None) -> "RadialSymbol":
        return RadialSymbol(lambda xi: np.full_like(xi, float(value)),
                            label if label is not None else f"const({value})")


class SpectralField:
    """A real scalar field with lazily synchronized physical/spectral views.

    ``spectral`` holds raw ``numpy.fft`` coefficients of the physical samples
    (no continuum normalization); ``physical`` holds real samples on the grid.
    Whichever view was set last is authoritative; the other is computed on
    demand. Converting spectral -> physical asserts the imaginary residue is
    at round-off level and discards it.
    """

    def __init__(self, grid: PeriodicGrid, physical: np.ndarray | None = None,
                 spectral: np.ndarray | None = None):
        if physical is None and spectral is None:
            raise ValueError("provide physical samples or spectral coefficients")
        self.grid = grid
        self._physical = None
        self._spectral = None
        if physical is not None:
            physical = np.asarray(physical, dtype=float)
            if physical.shape != grid.shape:
                raise ValueError(f"physical shape {physical.shape} != grid shape {grid.shape}")
            self._physical = physical
        if spectral is not None:
            spectral = np.asarray(spectral, dtype=complex)
            if spectral.shape != grid.shape:
                raise ValueError(f"spectral shape {spectral.shape} != grid shape {grid.shape}")
            self._spectral = spectral

    @classmethod
    def from_physical(cls, grid: PeriodicGrid, samples: np.ndarray) -> "SpectralField":
        return cls(grid, physical=samples)

    @classmethod
    def from_spectral(cls, grid: PeriodicGrid, coeffs: np.ndarray) -> "SpectralField":
        return cls(grid, spectral=coeffs)

    @property
    def spectral(self) -> np.ndarray:
        if self._spectral is None:
            self._spectral = np.fft.fftn(self._physical)
        return self._spectral

    @property
    def physical(self) -> np.ndarray:
        if self._physical is None:
            z = np.fft.ifftn(self._spectral)
            scale = float(np.max(np.abs(z.real)))
            residue = float(np.max(np.abs(z.imag)))
            if scale > 0 and residue > IMAG_RESIDUE_GUARD * scale:
                raise NumericalError(
                    f"imaginary residue {residue:.3e} exceeds {IMAG_RESIDUE_GUARD:.0e} "
                    f"of field scale {scale:.3e}; field is not real"
                )
            self._physical = z.real
        return self._physical

    @property
    def imag_residue(self) -> float:
        """Max |imag| of the inverse transform relative to the field scale."""
        z = np.fft.ifftn(self.spectral)
        scale = float(np.max(np.abs(z.real)))
        if scale == 0.0:
            return 0.0
        return float(np.max(np.abs(z.imag))) / scale

    def copy(self) -> "SpectralField":
        out = SpectralField.__new__(SpectralField)
        out.grid = self.grid
        out._physical = None if self._physical is None else self._physical.copy()
        out._spectral = None if self._spectral is None else self._spectral.copy()
        return out


def apply_multiplier(f: SpectralField, m: RadialSymbol) -> SpectralField:
    """Apply the radial multiplier: g_hat(xi) = m(|xi|) * f_hat(xi).

    Raises :class:`NumericalError` naming the offending |xi| if the symbol
    evaluates non-finite anywhere on the grid's frequency lattice.
    """
    xi = f.grid.xi_norm
    values = m(xi)
    bad = ~np.isfinite(values)
    if np.any(bad):
        where = tuple(np.argwhere(bad)[0])
        raise NumericalError(
            f"symbol '{m.label}' is non-finite at |xi| = {float(xi[where])!r}"
        )
    return SpectralField.from_spectral(f.grid, values * f.spectral)
