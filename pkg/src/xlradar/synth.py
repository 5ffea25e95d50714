"""IF measurement matrix synthesis.

Three signal models produce the M-by-N complex IF matrix Y (rows = virtual
antenna index m, columns = fast-time sample n):

* ``synth_narrowband`` - superposition of pure 2D complex tones,
  ``Y[m,n] = sum_k a_k exp(j2pi W_r n) exp(j2pi W_t m)``.
* ``synth_wideband`` - the narrowband tones multiplied by the spatial
  wideband coupling term ``exp(j2pi (alpha/N) W_t m n)``.
* ``synth_exact`` - the unapproximated dechirped IF signal evaluated from
  physical delays; serves as the approximation oracle for the other two.

Noise is reproducible: the realization depends only on (seed, M, N), so the
narrowband and wideband matrices for one scenario share the identical noise
draw.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import RadarParams, Scenario, Target, validate


@dataclass(frozen=True)
class IfMatrix:
    """M-by-N complex IF measurement matrix with its parameter snapshot."""

    data: np.ndarray
    params: RadarParams

    def __post_init__(self):
        d = np.asarray(self.data, dtype=np.complex128)
        object.__setattr__(self, "data", d)
        if d.ndim != 2:
            raise ValueError("IF matrix must be 2-dimensional")
        if d.shape != (self.params.M, self.params.N):
            raise ValueError(
                f"matrix shape {d.shape} does not match params "
                f"(M={self.params.M}, N={self.params.N})")
        if not np.all(np.isfinite(d.view(np.float64))):
            raise ValueError("IF matrix contains non-finite entries")

    @property
    def shape(self):
        return self.data.shape


def noise_matrix(M: int, N: int, sigma: float, seed: int) -> np.ndarray:
    """Circular complex Gaussian noise, variance sigma^2 per sample.

    Uses the counter-based Philox generator keyed by the seed, so the draw
    is a pure function of (seed, M, N) and rows could be generated
    independently in a parallel implementation.
    """
    if sigma < 0:
        raise ValueError("noise sigma must be nonnegative")
    if sigma == 0:
        return np.zeros((M, N), dtype=np.complex128)
    rng = np.random.Generator(np.random.Philox(key=seed))
    w = rng.standard_normal((2, M, N))
    return sigma / np.sqrt(2.0) * (w[0] + 1j * w[1])


def add_noise(Y: IfMatrix, sigma: float, seed: int) -> IfMatrix:
    """Return a copy of Y with AWGN added; sigma = 0 is the identity."""
    if sigma == 0:
        return Y
    M, N = Y.shape
    return IfMatrix(Y.data + noise_matrix(M, N, sigma, seed), Y.params)


def _check(scenario: Scenario):
    problems = validate(scenario)
    if problems:
        raise ValueError("invalid scenario: " + "; ".join(problems))


def _tone_matrix(target: Target, M: int, N: int) -> np.ndarray:
    m = np.arange(M)[:, None]
    n = np.arange(N)[None, :]
    return (target.amplitude
            * np.exp(2j * np.pi * target.omega_r * n)
            * np.exp(2j * np.pi * target.omega_theta * m))


def sw_term(omega_theta: float, alpha: float, M: int, N: int) -> np.ndarray:
    """Spatial wideband phase matrix exp(j2pi (alpha/N) omega_theta m n)."""
    m = np.arange(M)[:, None]
    n = np.arange(N)[None, :]
    return np.exp(2j * np.pi * (alpha / N) * omega_theta * (m * n))


def synth_narrowband(scenario: Scenario) -> IfMatrix:
    """Synthesize Y under the spatial-narrowband model (pure 2D tones)."""
    _check(scenario)
    p = scenario.params
    Y = np.zeros((p.M, p.N), dtype=np.complex128)
    for t in scenario.targets:
        Y += _tone_matrix(t, p.M, p.N)
    Y += noise_matrix(p.M, p.N, scenario.noise_sigma, scenario.seed)
    return IfMatrix(Y, p)


def synth_wideband(scenario: Scenario) -> IfMatrix:
    """Synthesize Y under the spatial-wideband model (tones times SW term)."""
    _check(scenario)
    p = scenario.params
    Y = np.zeros((p.M, p.N), dtype=np.complex128)
    for t in scenario.targets:
        Y += _tone_matrix(t, p.M, p.N) * sw_term(t.omega_theta, p.alpha, p.M, p.N)
    Y += noise_matrix(p.M, p.N, scenario.noise_sigma, scenario.seed)
    return IfMatrix(Y, p)


def effective_amplitude(params: RadarParams, target: Target) -> complex:
    """Amplitude the approximate models see for a physically specified target.

    The dechirp phase terms that do not vary with antenna index,
    exp(-j pi gamma tau_R^2) and exp(+j 2 pi f_c tau_R), are absorbed into
    the target amplitude together with the conjugation from mixing.
    """
    if not target.is_physical:
        raise ValueError("target lacks physical range/DoA fields")
    tau_r = 2.0 * target.range_m / params.c
    phase = -np.pi * params.gamma * tau_r**2 + 2.0 * np.pi * params.f_c * tau_r
    return complex(np.conj(target.amplitude) * np.exp(1j * phase))


def synth_exact(scenario: Scenario, noise: bool = False) -> IfMatrix:
    """Synthesize Y from physical delays with no approximation.

    Every target must carry physical range/DoA fields.  The per-element
    delay is ``tau_m = 2 R / c + m d sin(theta) / c`` and the IF sample is

        Y[m,n] = sum_k conj(a_k) exp(j2pi gamma tau_m n / f_s)
                 exp(-j pi gamma tau_m^2) exp(j2pi f_c tau_m)

    Defaults to noiseless since this model is mainly used as an oracle for
    the approximate models.
    """
    _check(scenario)
    p = scenario.params
    m = np.arange(p.M)[:, None]
    n = np.arange(p.N)[None, :]
    Y = np.zeros((p.M, p.N), dtype=np.complex128)
    for t in scenario.targets:
        if not t.is_physical:
            raise ValueError("synth_exact requires physical target fields "
                             "(range_m and theta_deg)")
        tau_m = (2.0 * t.range_m / p.c
                 + m * p.d * np.sin(np.radians(t.theta_deg)) / p.c)
        phase = (2.0 * np.pi * p.gamma * tau_m * n / p.f_s
                 - np.pi * p.gamma * tau_m**2
                 + 2.0 * np.pi * p.f_c * tau_m)
        Y += np.conj(t.amplitude) * np.exp(1j * phase)
    if noise:
        Y += noise_matrix(p.M, p.N, scenario.noise_sigma, scenario.seed)
    return IfMatrix(Y, p)
