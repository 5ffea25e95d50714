"""Unitary DFT utilities, Dirichlet kernel, and distortion-view maps.

The three map builders expose the spatial-wideband distortions visually:

* ``angle_time_map`` - beam squint: the apparent angle drifts with fast time.
* ``range_antenna_map`` - range migration: the apparent beat frequency
  drifts across the aperture.
* ``range_angle_map`` - dual wideband spread: the target response smears
  jointly in both transformed axes.

Analysis transforms use the exp(-j2pi.) kernel so a tone exp(+j2pi f l)
peaks at bin round(f L).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .synth import IfMatrix


def dirichlet(L: int, x):
    """Normalized geometric phase sum (1/sqrt(L)) sum_l exp(j2pi l x).

    Periodic in x with period 1; equals sqrt(L) at integer x.  Accepts
    scalars or arrays.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    x = np.asarray(x, dtype=float)
    num = np.sin(np.pi * L * x)
    den = np.sin(np.pi * x)
    on_integer = np.abs(den) < 1e-15
    ratio = num / np.where(on_integer, 1.0, den)
    out = ratio / np.sqrt(L) * np.exp(1j * np.pi * (L - 1) * x)
    # at integer x the sign of the sine ratio cancels the phase factor and
    # the coherent sum is exactly sqrt(L)
    out = np.where(on_integer, np.sqrt(L) + 0j, out)
    return out if out.ndim else complex(out)


def _as_array(Y) -> np.ndarray:
    return Y.data if isinstance(Y, IfMatrix) else np.asarray(Y, dtype=np.complex128)


def dft_axis(Y, axis: int) -> np.ndarray:
    """Unitary analysis DFT along one axis (0 = antenna, 1 = fast time)."""
    A = _as_array(Y)
    L = A.shape[axis]
    return np.fft.fft(A, axis=axis) / np.sqrt(L)


def idft_axis(Z, axis: int) -> np.ndarray:
    """Unitary synthesis DFT; inverse of :func:`dft_axis`."""
    A = _as_array(Z)
    L = A.shape[axis]
    return np.fft.ifft(A, axis=axis) * np.sqrt(L)


@dataclass(frozen=True)
class MapGrid:
    """Real magnitude map with axis semantics and bin-to-frequency scaling.

    ``row_step`` / ``col_step`` give the normalized frequency per bin for
    transformed axes and 1.0 for raw index axes.
    """

    data: np.ndarray
    row_axis: str
    col_axis: str
    row_step: float
    col_step: float

    def __post_init__(self):
        d = np.asarray(self.data, dtype=float)
        object.__setattr__(self, "data", d)
        if np.any(d < 0):
            raise ValueError("magnitude map must be nonnegative")

    @property
    def shape(self):
        return self.data.shape


def angle_time_map(Y) -> MapGrid:
    """Magnitude over (angle bin p, fast-time index n)."""
    A = _as_array(Y)
    Z = dft_axis(A, axis=0)
    return MapGrid(np.abs(Z), "angle-bin", "time-index",
                   row_step=1.0 / A.shape[0], col_step=1.0)


def range_antenna_map(Y) -> MapGrid:
    """Magnitude over (antenna index m, range bin q)."""
    A = _as_array(Y)
    Z = dft_axis(A, axis=1)
    return MapGrid(np.abs(Z), "antenna-index", "range-bin",
                   row_step=1.0, col_step=1.0 / A.shape[1])


def range_angle_map(Y) -> MapGrid:
    """Magnitude of the 2D unitary DFT: (angle bin p, range bin q)."""
    A = _as_array(Y)
    Z = dft_axis(dft_axis(A, axis=0), axis=1)
    return MapGrid(np.abs(Z), "angle-bin", "range-bin",
                   row_step=1.0 / A.shape[0], col_step=1.0 / A.shape[1])


def column_peaks(grid: MapGrid) -> np.ndarray:
    """Per-column argmax row index (strict maximum, lowest index on ties)."""
    return np.argmax(grid.data, axis=0)


def row_peaks(grid: MapGrid) -> np.ndarray:
    """Per-row argmax column index (strict maximum, lowest index on ties)."""
    return np.argmax(grid.data, axis=1)


def circular_distance(a, b, period: float = 1.0):
    """Minimum distance between frequencies on a circle of given period."""
    d = np.mod(np.asarray(a) - np.asarray(b), period)
    return np.minimum(d, period - d)
