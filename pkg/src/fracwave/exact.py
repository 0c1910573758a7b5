"""Closed-form and ODE-constructed reference solutions.

These serve double duty: they provide initial data (as exact Fourier
coefficients, so the solver starts from the true orthogonal projection) and
pointwise error oracles for the experiment harness.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .errors import FracwaveError
from .grid import Domain, SpectralField

__all__ = [
    "TravelingProfile",
    "ch_smooth_profile",
    "peakon",
    "periodized_peakon",
    "bbm_solitary",
    "peakon_field",
    "periodized_peakon_field",
    "bbm_field",
    "profile_field",
]


class ProfileError(FracwaveError):
    """Traveling-wave profile construction failed (blow-up or no period found)."""


def _wrap_centered(y: np.ndarray | float, L: float) -> np.ndarray:
    """Wrap displacements into the minimal image [-L/2, L/2)."""
    return np.mod(np.asarray(y, dtype=np.float64) + 0.5 * L, L) - 0.5 * L


@dataclass(frozen=True)
class TravelingProfile:
    """One period of a traveling-wave profile sampled on a uniform grid.

    xi_grid spans [0, period] inclusive (values[0] == values[-1]); evaluation
    at arbitrary points uses trigonometric interpolation of the periodic
    extension, so the reference keeps spectral accuracy.
    """

    xi_grid: np.ndarray
    values: np.ndarray
    period: float
    speed: float

    def __post_init__(self):
        xi = np.asarray(self.xi_grid, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        if xi.shape != v.shape or xi.ndim != 1 or xi.size < 8:
            raise ValueError("xi_grid and values must be matching 1-d arrays")
        if abs(v[0] - v[-1]) > 1e-8 * max(1.0, np.max(np.abs(v))):
            raise ValueError("profile endpoints do not match: not periodic")
        if not (np.isfinite(self.period) and self.period > 0):
            raise ValueError(f"period must be positive, got {self.period}")
        object.__setattr__(self, "xi_grid", xi)
        object.__setattr__(self, "values", v)
        # Interpolation table: half spectrum of the n uniform samples on
        # [0, period), truncated where coefficients reach the roundoff floor.
        n = v.size - 1
        half = np.fft.rfft(v[:-1]) / n
        keep = np.nonzero(np.abs(half) > 1e-17 * np.abs(half[0]))[0]
        k_max = int(keep[-1]) + 1 if keep.size else 1
        object.__setattr__(self, "_half", half[:k_max])

    def evaluate(self, xi: np.ndarray | float) -> np.ndarray:
        """Profile value at arbitrary points (periodically extended)."""
        phase = np.exp((2j * np.pi / self.period) * np.asarray(xi, dtype=np.float64))
        half = self._half
        acc = np.full(phase.shape, half[-1], dtype=np.complex128)
        for c in half[-2::-1]:  # Horner over modes, highest first
            acc = acc * phase + c
        return 2.0 * acc.real - half[0].real

    def __call__(self, xi: np.ndarray | float) -> np.ndarray:
        return self.evaluate(xi)

    def write_csv(self, path) -> None:
        """Two-column (xi, value) export for inspection."""
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["xi", "value"])
            for xi, v in zip(self.xi_grid, self.values):
                w.writerow([f"{xi:.12g}", f"{v:.12g}"])


def ch_smooth_profile(c: float, tol: float = 1e-8, n_samples: int = 8192) -> TravelingProfile:
    """Smooth periodic traveling-wave profile of the classical CH equation.

    Integrates phi'' = phi - 3/(phi - c)^2 from (phi, phi') = (1, 0); the
    period is the first Poincare return of (phi, phi') to within tol of
    (1, 0), detected as the first upward zero crossing of phi'.
    """
    if c <= 1.0:
        raise ValueError(f"profile requires wave speed c > 1, got {c}")

    def odefun(_xi, y):
        return [y[1], y[0] - 3.0 / (y[0] - c) ** 2]

    def section_event(_xi, y):  # Poincare section phi' = 0, either direction
        return y[1]

    def approach_event(_xi, y):
        return (c - 0.05) - y[0]

    approach_event.terminal = True

    span = 10.0 * 2.0 * np.pi  # ten linearized-oscillation periods
    rtol = min(1e-13, tol * 1e-3)
    sol = solve_ivp(
        odefun, (0.0, span), [1.0, 0.0], method="DOP853",
        rtol=rtol, atol=rtol, dense_output=True,
        events=[section_event, approach_event],
    )
    if sol.t_events[1].size:
        raise ProfileError(f"profile approached the singular level phi = c = {c}")
    a = None
    for t_ev in sol.t_events[0]:
        if t_ev < 1e-6:  # departure from the initial section point
            continue
        phi_ev, dphi_ev = sol.sol(t_ev)
        if np.hypot(phi_ev - 1.0, dphi_ev) <= tol:
            a = float(t_ev)
            break
    if a is None:
        raise ProfileError(f"no return to (1, 0) within tol={tol:.1e} over span {span:.1f}")
    xi = np.linspace(0.0, a, n_samples + 1)
    values = sol.sol(xi)[0]
    return TravelingProfile(xi, values, a, c)


def peakon(x, t: float, c: float, x0: float, L: float):
    """Rigidly transported peakon c*exp(-|x - c t - x0|), periodically wrapped."""
    d = _wrap_centered(np.asarray(x, dtype=np.float64) - c * t - x0, L)
    return c * np.exp(-np.abs(d))


def periodized_peakon(x, c_i: float, x_i: float, L: float):
    """Periodic peakon c_i*cosh(L/2 - d)/cosh(L/2) with d the periodic distance.

    Evaluated via exponentials so large L cannot overflow; peaks at x_i with
    value c_i and tends to c_i*exp(-d) as L grows.
    """
    if L <= 0:
        raise ValueError(f"L must be positive, got {L}")
    d = np.abs(_wrap_centered(np.asarray(x, dtype=np.float64) - x_i, L))
    return c_i * (np.exp(-d) + np.exp(d - L)) / (1.0 + np.exp(-L))


def bbm_solitary(x, t: float, c_s: float, x0: float):
    """BBM solitary wave 3(c_s - 1) sech^2[0.5 sqrt((c_s-1)/c_s) (x - x0 - c_s t)]."""
    if c_s <= 1.0:
        raise ValueError(f"solitary wave requires c_s > 1, got {c_s}")
    beta = 0.5 * np.sqrt((c_s - 1.0) / c_s)
    arg = beta * (np.asarray(x, dtype=np.float64) - x0 - c_s * t)
    return 3.0 * (c_s - 1.0) / np.cosh(arg) ** 2


# ----------------------------------------------------------------------------
# Exact Fourier coefficients of the catalog initial data.  Using closed-form
# integrals (rather than grid quadrature) makes the initial state the true
# orthogonal projection of u0.


def _assemble(domain: Domain, half: np.ndarray) -> SpectralField:
    full = np.empty(2 * domain.N + 1, dtype=np.complex128)
    full[domain.N:] = half
    full[: domain.N] = np.conj(half[1:][::-1])
    return SpectralField(domain, full)


def peakon_field(domain: Domain, c: float, x0: float) -> SpectralField:
    """Projection of the wrapped peakon c*exp(-|x - x0|) onto the retained modes.

    Coefficients follow from integrating exp(-|y|) exp(-i kappa y) over the
    centered period window: c_k = (2c/L) (1 - (-1)^k e^{-L/2}) / (1 + kappa^2)
    times the peak-position phase.
    """
    L = domain.length
    k = np.arange(domain.N + 1)
    kap = domain.wavenumber(k)
    signs = np.where(k % 2 == 0, 1.0, -1.0)
    mag = (2.0 * c / L) * (1.0 - signs * np.exp(-L / 2.0)) / (1.0 + kap**2)
    return _assemble(domain, mag * np.exp(-1j * kap * x0))


def periodized_peakon_field(domain: Domain, amplitudes, positions) -> SpectralField:
    """Projection of a sum of periodic (cosh) peakons.

    Each peakon has the exact Lorentzian spectrum
    c_k = (2 c_i tanh(L/2)/L) / (1 + kappa^2) with a position phase.
    """
    if len(amplitudes) != len(positions):
        raise ValueError("amplitudes and positions must have the same length")
    L = domain.length
    k = np.arange(domain.N + 1)
    kap = domain.wavenumber(k)
    base = (2.0 * np.tanh(L / 2.0) / L) / (1.0 + kap**2)
    half = np.zeros(domain.N + 1, dtype=np.complex128)
    for c_i, x_i in zip(amplitudes, positions):
        half += c_i * base * np.exp(-1j * kap * x_i)
    return _assemble(domain, half)


def bbm_field(domain: Domain, c_s: float, x0: float) -> SpectralField:
    """Projection of the BBM solitary wave (periodized by its image sum).

    Uses the line transform of sech^2: F(kappa) = pi*kappa / (beta^2
    sinh(pi*kappa/(2 beta))), which by Poisson summation gives the exact
    coefficients of the periodized wave; image tails are O(1e-12) for the
    catalog parameters.
    """
    if c_s <= 1.0:
        raise ValueError(f"solitary wave requires c_s > 1, got {c_s}")
    beta = 0.5 * np.sqrt((c_s - 1.0) / c_s)
    k = np.arange(domain.N + 1)
    kap = domain.wavenumber(k)
    amp = 3.0 * (c_s - 1.0) / domain.length
    half = np.empty(domain.N + 1, dtype=np.float64)
    half[0] = amp * 2.0 / beta
    arg = np.pi * kap[1:] / (2.0 * beta)
    with np.errstate(over="ignore"):
        ratio = np.where(arg < 700.0, np.pi * kap[1:] / (beta**2 * np.sinh(arg)), 0.0)
    half[1:] = amp * ratio
    return _assemble(domain, half * np.exp(-1j * kap * x0))


def profile_field(domain: Domain, profile: TravelingProfile, tiles: int) -> SpectralField:
    """Projection of the profile tiled `tiles` times across the domain.

    The tiled function has period L/tiles, so only modes k = tiles*j are
    populated, directly from the profile's own interpolation spectrum.
    """
    if abs(domain.length - tiles * profile.period) > 1e-9 * domain.length:
        raise ValueError("domain length must equal tiles * profile period")
    if domain.x_left != 0.0:
        raise ValueError("tiled profile initial data assumes x_left = 0")
    half = np.zeros(domain.N + 1, dtype=np.complex128)
    phat = profile._half
    j_max = min(domain.N // tiles, phat.size - 1)
    half[tiles * np.arange(j_max + 1)] = phat[: j_max + 1]
    return _assemble(domain, half)
