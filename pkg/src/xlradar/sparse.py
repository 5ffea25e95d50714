"""Overcomplete steering dictionaries and OMP-based 1D frequency estimation.

A mixture of complex tones y[l] = sum_k x_k exp(j2pi f_k l) is recovered by
greedy sparse coding against a fine uniform frequency grid: at each step the
grid atom best correlated with the residual is added to the support and the
coefficients are re-solved by least squares over the whole support (full
OMP, not matching pursuit, because nearby atoms are strongly correlated).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

DEFAULT_GRID_CAP = 2**20


@dataclass(frozen=True)
class FreqGrid:
    """Uniform grid of candidate normalized frequencies in [f_lo, f_hi)."""

    freqs: np.ndarray
    f_lo: float
    f_hi: float
    oversampling: float

    def __post_init__(self):
        f = np.asarray(self.freqs, dtype=float)
        object.__setattr__(self, "freqs", f)
        if f.size and np.any(np.diff(f) <= 0):
            raise ValueError("grid frequencies must be strictly increasing")

    @property
    def size(self) -> int:
        return self.freqs.size

    @property
    def step(self) -> float:
        return (self.f_hi - self.f_lo) / max(self.size, 1)


def steering_vector(L: int, freq) -> np.ndarray:
    """Unnormalized steering column [1, exp(j2pi f), ..., exp(j2pi f (L-1))]."""
    return np.exp(2j * np.pi * np.outer(np.arange(L), freq)).squeeze(-1) \
        if np.ndim(freq) == 0 else np.exp(2j * np.pi * np.outer(np.arange(L), freq))


@dataclass(frozen=True)
class Dictionary:
    """L-by-G steering matrix over a frequency grid.

    ``columns`` holds unit-normalized atoms (used for correlation);
    ``raw_columns`` the unnormalized steering vectors whose least-squares
    coefficients are directly the tone amplitudes.
    """

    columns: np.ndarray
    grid: FreqGrid
    normalized: bool = True

    @property
    def L(self) -> int:
        return self.columns.shape[0]

    @property
    def G(self) -> int:
        return self.columns.shape[1]

    def raw_columns(self, idx) -> np.ndarray:
        return steering_vector(self.L, self.grid.freqs[idx])


def build_dictionary(L: int, f_lo: float, f_hi: float, oversampling: float,
                     grid_cap: int = DEFAULT_GRID_CAP) -> Dictionary:
    """Build a unit-column steering dictionary on a uniform frequency grid.

    The grid has G = ceil(oversampling * L * (f_hi - f_lo)) points starting
    at f_lo with spacing (f_hi - f_lo) / G, i.e. an oversampling-times finer
    mesh than the natural 1/L resolution.
    """
    if L < 2:
        raise ValueError("signal length must be >= 2")
    if oversampling < 1:
        raise ValueError("oversampling factor must be >= 1")
    if not f_lo < f_hi:
        raise ValueError("need f_lo < f_hi")
    G = int(np.ceil(oversampling * L * (f_hi - f_lo) - 1e-9))
    if G > grid_cap:
        raise ValueError(f"grid size {G} exceeds cap {grid_cap}")
    freqs = f_lo + np.arange(G) * (f_hi - f_lo) / G
    grid = FreqGrid(freqs=freqs, f_lo=f_lo, f_hi=f_hi, oversampling=oversampling)
    cols = steering_vector(L, freqs) / np.sqrt(L)
    return Dictionary(columns=cols, grid=grid, normalized=True)


@dataclass(frozen=True)
class Atom:
    index: int
    freq: float
    coef: complex


@dataclass(frozen=True)
class SparseSolution:
    """OMP output: selected atoms, final residual norm, iteration count."""

    atoms: tuple[Atom, ...]
    residual_norm: float
    iterations: int
    stop_reason: str = "converged"
    residual_history: tuple[float, ...] = ()

    def frequencies(self) -> np.ndarray:
        return np.array([a.freq for a in self.atoms])

    def coefficients(self) -> np.ndarray:
        return np.array([a.coef for a in self.atoms])


def omp(y: np.ndarray, D: Dictionary, max_atoms: int | None = None,
        residual_tol: float | None = None,
        cond_limit: float = 1e8) -> SparseSolution:
    """Orthogonal matching pursuit over a steering dictionary.

    Stops when ``max_atoms`` atoms are selected or the residual norm drops
    below ``residual_tol * ||y||``, whichever triggers first (at least one
    rule must be given).  Atom coefficients come from a least-squares refit
    over the unnormalized steering columns, so they are tone amplitudes.
    Returns atoms sorted by coefficient magnitude, descending.
    """
    y = np.asarray(y, dtype=np.complex128).ravel()
    if y.size == 0:
        raise ValueError("empty measurement vector")
    if y.size != D.L:
        raise ValueError(f"measurement length {y.size} does not match "
                         f"dictionary atom length {D.L}")
    if max_atoms is None and residual_tol is None:
        raise ValueError("no stopping rule given")
    norm_y = np.linalg.norm(y)
    if norm_y == 0:
        return SparseSolution(atoms=(), residual_norm=0.0, iterations=0,
                              stop_reason="zero input")

    cap = max_atoms if max_atoms is not None else min(D.G, 4 * D.L)
    tol_abs = residual_tol * norm_y if residual_tol is not None else -1.0

    support: list[int] = []
    residual = y.copy()
    coefs = np.zeros(0, dtype=np.complex128)
    history = [float(norm_y)]
    stop_reason = "max atoms"
    it = 0
    while it < cap:
        if np.linalg.norm(residual) <= tol_abs:
            stop_reason = "residual threshold"
            break
        corr = np.abs(D.columns.conj().T @ residual)
        best = int(np.argmax(corr))  # argmax takes the lowest index on ties
        if best in support:
            stop_reason = "repeated atom"
            break
        trial = support + [best]
        A = D.raw_columns(trial)
        if np.linalg.cond(A) > cond_limit:
            stop_reason = "ill-conditioned support"
            break
        support = trial
        coefs, *_ = np.linalg.lstsq(A, y, rcond=None)
        residual = y - A @ coefs
        history.append(float(np.linalg.norm(residual)))
        it += 1
    else:
        stop_reason = "max atoms"

    order = np.argsort(-np.abs(coefs), kind="stable")
    atoms = tuple(Atom(index=support[i], freq=float(D.grid.freqs[support[i]]),
                       coef=complex(coefs[i])) for i in order)
    return SparseSolution(atoms=atoms,
                          residual_norm=float(np.linalg.norm(residual)),
                          iterations=it, stop_reason=stop_reason,
                          residual_history=tuple(history))


def least_squares_amplitudes(y: np.ndarray, freqs) -> np.ndarray:
    """Tone amplitudes for fixed frequencies by least squares."""
    y = np.asarray(y, dtype=np.complex128).ravel()
    A = steering_vector(y.size, np.atleast_1d(np.asarray(freqs, dtype=float)))
    coefs, *_ = np.linalg.lstsq(A, y, rcond=None)
    return coefs


def refine_frequencies(y: np.ndarray, freqs, half_width: float,
                       sweeps: int = 3) -> np.ndarray:
    """Cyclic continuous refinement of tone frequencies.

    For each tone in turn, the contributions of all other tones (at their
    current estimates) are subtracted and the frequency is re-estimated by
    maximizing the correlation magnitude against the cleaned vector within
    +/- half_width of the current value.  A few sweeps remove the grid
    quantization of an OMP solution for separated tones.
    """
    y = np.asarray(y, dtype=np.complex128).ravel()
    freqs = np.array(np.atleast_1d(freqs), dtype=float)
    L = y.size
    if freqs.size == 0:
        return freqs
    for _ in range(sweeps):
        amps = least_squares_amplitudes(y, freqs)
        for k in range(freqs.size):
            others = np.delete(np.arange(freqs.size), k)
            cleaned = y - steering_vector(L, freqs[others]) @ amps[others] \
                if others.size else y

            def neg_corr(f):
                a = np.exp(2j * np.pi * f * np.arange(L))
                return -abs(np.vdot(a, cleaned))

            res = minimize_scalar(neg_corr, bounds=(freqs[k] - half_width,
                                                    freqs[k] + half_width),
                                  method="bounded",
                                  options={"xatol": 1e-12})
            freqs[k] = res.x
    return freqs
