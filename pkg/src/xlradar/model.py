"""Radar configuration, target descriptions, and unit conversions.

All estimation code works in normalized units: a target is a pair of
normalized frequencies (omega_r in cycles per fast-time sample, omega_theta
in cycles per array element) plus a complex amplitude.  This module converts
between those and physical quantities (meters, degrees) and validates
scenario descriptions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

C_LIGHT = 2.9979e8
"""Propagation speed in m/s (overridable per RadarParams)."""


@dataclass(frozen=True)
class RadarParams:
    """Physical MIMO-FMCW radar configuration with derived quantities.

    The chirp sweeps a bandwidth ``BW = alpha * f_c`` over ``T_ch`` seconds,
    so the chirp rate is ``gamma = alpha * f_c / T_ch``.  Fast-time sampling
    at ``f_s`` yields ``N = ceil(f_s * T_ch)`` samples per chirp; the virtual
    ULA has ``M`` elements spaced ``d`` meters apart.
    """

    f_c: float
    alpha: float
    T_ch: float
    f_s: float
    M: int
    d: float
    c: float = C_LIGHT

    def __post_init__(self):
        if self.f_c <= 0:
            raise ValueError("carrier frequency must be positive")
        if not 0.0 <= self.alpha < 1.0:
            raise ValueError("bandwidth selection parameter must be in [0, 1)")
        if self.T_ch <= 0:
            raise ValueError("chirp duration must be positive")
        if self.f_s <= 0:
            raise ValueError("sampling frequency must be positive")
        if self.M < 1:
            raise ValueError("array must have at least one element")
        if self.d <= 0:
            raise ValueError("element spacing must be positive")

    @property
    def gamma(self) -> float:
        """Chirp rate in Hz/s."""
        return self.alpha * self.f_c / self.T_ch

    @property
    def bandwidth(self) -> float:
        return self.alpha * self.f_c

    @property
    def wavelength(self) -> float:
        return self.c / self.f_c

    @property
    def N(self) -> int:
        """Fast-time sample count per chirp."""
        return math.ceil(self.f_s * self.T_ch - 1e-9)

    @property
    def d_over_lambda(self) -> float:
        return self.d / self.wavelength

    @classmethod
    def automotive(cls, M: int = 256, N: int = 256, alpha: float = 0.1,
                   f_c: float = 77e9, T_ch: float = 50e-6,
                   d_over_lambda: float = 0.5, c: float = C_LIGHT) -> "RadarParams":
        """77 GHz-style configuration with the sample count chosen directly.

        ``f_s`` is set to ``N / T_ch`` so the derived sample count equals N
        exactly.  Convenient for scenarios stated on an M-by-N measurement
        grid rather than in physical sampling terms.
        """
        f_s = N / T_ch
        d = d_over_lambda * c / f_c
        return cls(f_c=f_c, alpha=alpha, T_ch=T_ch, f_s=f_s, M=M, d=d, c=c)


def wrap_frequency(x: float) -> float:
    """Wrap a normalized frequency into the principal interval [-0.5, 0.5)."""
    return (x + 0.5) % 1.0 - 0.5


def to_normalized(params: RadarParams, range_m: float, theta_deg: float):
    """Convert (range in meters, DoA in degrees) to normalized frequencies.

    Returns ``(omega_r, omega_theta)`` with
    ``omega_r = 2 * gamma * range_m / (c * f_s)`` and
    ``omega_theta = d * sin(theta) / lambda``.

    Raises ValueError for theta outside (-90, 90), negative range, or an
    aliased range frequency (omega_r >= 1).
    """
    if range_m < 0:
        raise ValueError(f"range must be nonnegative, got {range_m}")
    if not -90.0 < theta_deg < 90.0:
        raise ValueError(f"DoA must lie in (-90, 90) degrees, got {theta_deg}")
    omega_r = 2.0 * params.gamma * range_m / (params.c * params.f_s)
    if omega_r >= 1.0:
        raise ValueError(
            f"range {range_m} m aliases: omega_r = {omega_r:.6f} >= 1 "
            f"(unambiguous maximum is {from_normalized(params, 1.0 - 1e-12, 0.0)[0]:.3f} m)")
    omega_theta = params.d_over_lambda * math.sin(math.radians(theta_deg))
    return omega_r, omega_theta


def from_normalized(params: RadarParams, omega_r: float, omega_theta: float):
    """Inverse of :func:`to_normalized` on the valid domain."""
    if not 0.0 <= omega_r < 1.0:
        raise ValueError(f"omega_r must lie in [0, 1), got {omega_r}")
    s = omega_theta / params.d_over_lambda
    if not -1.0 <= s <= 1.0:
        raise ValueError(f"omega_theta {omega_theta} exceeds |d/lambda| = "
                         f"{params.d_over_lambda}")
    range_m = omega_r * params.c * params.f_s / (2.0 * params.gamma)
    theta_deg = math.degrees(math.asin(s))
    return range_m, theta_deg


@dataclass(frozen=True)
class Target:
    """One far-field scatterer: a (omega_theta, omega_r, amplitude) signature.

    Physical fields are optional; when both physical and normalized values
    are supplied the normalized ones win (scenario examples in the literature
    are stated in normalized units while the physical constants often are
    not).
    """

    omega_r: float
    omega_theta: float
    amplitude: complex = 1.0 + 0.0j
    range_m: float | None = None
    theta_deg: float | None = None

    def __post_init__(self):
        # the array samples spatial frequency mod 1; store the principal value
        object.__setattr__(self, "omega_theta",
                           wrap_frequency(self.omega_theta))

    @classmethod
    def from_physical(cls, params: RadarParams, range_m: float,
                      theta_deg: float, amplitude: complex = 1.0 + 0.0j) -> "Target":
        omega_r, omega_theta = to_normalized(params, range_m, theta_deg)
        return cls(omega_r=omega_r, omega_theta=omega_theta,
                   amplitude=amplitude, range_m=range_m, theta_deg=theta_deg)

    @property
    def is_physical(self) -> bool:
        return self.range_m is not None and self.theta_deg is not None


@dataclass(frozen=True)
class Scenario:
    """A radar configuration plus target list and noise description."""

    params: RadarParams
    targets: tuple[Target, ...]
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))

    def with_sigma(self, sigma: float, seed: int | None = None) -> "Scenario":
        return replace(self, noise_sigma=sigma,
                       seed=self.seed if seed is None else seed)


def validate(scenario: Scenario) -> list[str]:
    """Collect every invariant violation in a scenario.

    Returns an empty list when the scenario is valid.  Violations are data,
    not exceptions: callers decide whether to abort.
    """
    problems: list[str] = []
    p = scenario.params
    if p.M < 1:
        problems.append("empty array: M must be >= 1")
    if p.N < 1:
        problems.append("empty fast-time grid: N must be >= 1")
    if scenario.noise_sigma < 0:
        problems.append(f"negative noise sigma {scenario.noise_sigma}")
    bound = p.d_over_lambda + 1e-12
    for i, t in enumerate(scenario.targets):
        if not 0.0 <= t.omega_r < 1.0:
            problems.append(
                f"target {i}: aliased range frequency omega_r = {t.omega_r}")
        if abs(t.omega_theta) > bound:
            problems.append(
                f"target {i}: omega_theta = {t.omega_theta} exceeds "
                f"d/lambda = {p.d_over_lambda}")
        if t.range_m is not None and t.range_m < 0:
            problems.append(f"target {i}: negative range {t.range_m}")
        if t.theta_deg is not None and not -90.0 < t.theta_deg < 90.0:
            problems.append(f"target {i}: DoA {t.theta_deg} outside (-90, 90)")
    return problems
