"""Independent brute-force references used to check the estimation path.

Nothing here shares code with the estimators beyond numpy primitives: the
2D oracle is a greedy matched filter over the full Kronecker grid realized
with zero-padded FFTs, and the tone oracles are direct summations.
"""

import numpy as np


def direct_phase_sum(L, x):
    """Brute-force (1/sqrt(L)) sum_l exp(j2pi l x)."""
    return sum(np.exp(2j * np.pi * l * x) for l in range(L)) / np.sqrt(L)


def grid_search_2d(Y: np.ndarray, K: int, oversampling: int = 16):
    """Greedy exhaustive 2D grid matched filter with interference cancellation.

    Searches the full (oversampling*M) x (oversampling*N) frequency grid via
    zero-padded FFT, removes each detected 2D tone by joint least squares,
    and repeats K times.  Returns a list of (omega_theta, omega_r, amplitude)
    with omega_theta wrapped into [-0.5, 0.5), sorted by (omega_theta,
    omega_r).
    """
    M, N = Y.shape
    P, Q = oversampling * M, oversampling * N
    picks = []
    resid = Y.copy()
    amps = np.zeros(0, dtype=complex)
    for _ in range(K):
        corr = np.fft.fft2(resid, s=(P, Q))
        p, q = np.unravel_index(int(np.argmax(np.abs(corr))), (P, Q))
        f_t = p / P
        if f_t >= 0.5:
            f_t -= 1.0
        picks.append((f_t, q / Q))
        A = np.stack([np.outer(np.exp(2j * np.pi * ft * np.arange(M)),
                               np.exp(2j * np.pi * fr * np.arange(N))).ravel()
                      for ft, fr in picks], axis=1)
        amps, *_ = np.linalg.lstsq(A, Y.ravel(), rcond=None)
        resid = (Y.ravel() - A @ amps).reshape(M, N)
    out = [(ft, fr, a) for (ft, fr), a in zip(picks, amps)]
    out.sort(key=lambda t: (t[0], t[1]))
    return out


def tone_mixture(L, freqs, amps):
    """Direct evaluation of a 1D tone mixture."""
    n = np.arange(L)
    y = np.zeros(L, dtype=complex)
    for f, a in zip(freqs, amps):
        y += a * np.exp(2j * np.pi * f * n)
    return y
