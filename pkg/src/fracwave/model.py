"""Semi-discrete right-hand side for the fractional Camassa-Holm family.

The state is the coefficient vector of u_N; each mode m evolves by

    dc_m/dt = [ -i*kappa_m * F_m
                - kappa2 * (2*|kappa_m|^alpha * A_m + B_m) ] / (1 + |kappa_m|^alpha)

with F = coefficients of kappa1*u + (3/2)*gamma*u^2, A = coefficients of
u*u_x, and B = coefficients of u*D^alpha(u_x), all truncated to |m| <= N.
Products are evaluated pseudospectrally on the padded grid, which reproduces
the truncated convolution sums exactly; A is folded in through the identity
2*|k|^a*A_m = |kappa_m|^alpha * i*kappa_m * (u^2)_m.

The flux carries the minus sign that makes a single linear mode evolve as
c_k(t) = c_k(0) * exp(-i*kappa1*kappa_k*t / (1 + |kappa_k|^alpha)), i.e.
rightward transport for kappa1 > 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft as sfft

from . import grid
from .errors import BlowUpError, SymmetryError
from .grid import Domain, SpectralField

__all__ = [
    "ModelParams",
    "Diagnostics",
    "RhsWorkspace",
    "rhs",
    "rhs_reference",
    "mass",
    "energy",
    "energy_derivative",
    "LINF_BLOWUP",
]

# Sup-norm runaway threshold; crossing it aborts an integration loudly.
LINF_BLOWUP = 1.0e6


@dataclass(frozen=True)
class ModelParams:
    """Coefficients (kappa1, gamma, kappa2, alpha) selecting the family member."""

    kappa1: float
    gamma: float
    kappa2: float
    alpha: float

    def __post_init__(self):
        for name in ("kappa1", "gamma", "kappa2", "alpha"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.gamma <= 0:
            raise ValueError(f"gamma must be > 0, got {self.gamma}")
        if not (1.0 <= self.alpha <= 2.0):
            raise ValueError(f"alpha must lie in [1, 2], got {self.alpha}")

    @classmethod
    def camassa_holm(cls, alpha: float = 2.0) -> "ModelParams":
        """Classical CH nonlinearity (0, 1, 1/3, alpha); alpha=2 is classical CH."""
        return cls(0.0, 1.0, 1.0 / 3.0, alpha)

    @classmethod
    def camassa_holm_omega(cls, omega: float) -> "ModelParams":
        """CH with linear dispersion 2*omega*u_x: (2w, 1, 1/3, 2)."""
        return cls(2.0 * omega, 1.0, 1.0 / 3.0, 2.0)

    @classmethod
    def fbbm(cls, alpha: float = 2.0) -> "ModelParams":
        """fBBM reduction (1, 1/3, 0, alpha); alpha=2 is BBM, alpha=1 is rBO."""
        return cls(1.0, 1.0 / 3.0, 0.0, alpha)


#: Named parameter sets exercised by the conservation suites.
PRESETS: dict[str, ModelParams] = {
    "ch": ModelParams.camassa_holm(),
    "ch-omega": ModelParams.camassa_holm_omega(0.5),
    "fch-1.5": ModelParams.camassa_holm(1.5),
    "bbm": ModelParams.fbbm(2.0),
    "rbo": ModelParams.fbbm(1.0),
}


@dataclass(frozen=True)
class Diagnostics:
    """Time series of invariants and norms sampled during integration."""

    times: np.ndarray
    mass: np.ndarray
    energy: np.ndarray
    l2: np.ndarray
    linf: np.ndarray

    def __post_init__(self):
        arrays = {}
        n = None
        for name in ("times", "mass", "energy", "l2", "linf"):
            a = np.asarray(getattr(self, name), dtype=np.float64)
            if n is None:
                n = a.size
            elif a.size != n:
                raise ValueError("diagnostic series must all have the same length")
            arrays[name] = a
        if n and np.any(np.diff(arrays["times"]) <= 0):
            raise ValueError("sample times must be strictly increasing")
        for name, a in arrays.items():
            a.setflags(write=False)
            object.__setattr__(self, name, a)

    def __len__(self) -> int:
        return self.times.size


class RhsWorkspace:
    """Precomputed multipliers and scratch buffers for one (domain, params) pair.

    Operates on grid-relative half spectra c[0..N] (Hermitian halves); safe to
    reuse across calls but confined to one thread at a time.
    """

    def __init__(self, domain: Domain, params: ModelParams):
        self.domain = domain
        self.params = params
        N = domain.N
        kappa = domain.wavenumber(np.arange(N + 1))
        kalpha = np.abs(kappa) ** params.alpha
        kalpha[0] = 0.0
        self.ik = 1j * kappa
        self.kalpha = kalpha
        self.denom_inv = 1.0 / (1.0 + kalpha)
        self.bmult = kalpha * self.ik
        # Padded product grid; a fast FFT length >= the dealiasing pad.
        self.pad = sfft.next_fast_len(grid._product_grid_size(domain), real=True)
        self._pad_u = np.zeros(self.pad // 2 + 1, dtype=np.complex128)
        self._pad_w = np.zeros(self.pad // 2 + 1, dtype=np.complex128)

    def rhs_half(self, c: np.ndarray) -> np.ndarray:
        """d/dt of the half spectrum c[0..N]."""
        p = self.params
        N = self.domain.N
        P = self.pad
        with np.errstate(over="ignore", invalid="ignore"):
            self._pad_u[: N + 1] = c * P
            self._pad_w[: N + 1] = (self.bmult * c) * P
            u = sfft.irfft(self._pad_u, n=P)
            w = sfft.irfft(self._pad_w, n=P)
            usq = sfft.rfft(u * u)[: N + 1] / P
            uw = sfft.rfft(u * w)[: N + 1] / P
            flux = p.kappa1 * c + 1.5 * p.gamma * usq
            out = -(self.ik * flux + p.kappa2 * (self.bmult * usq + uw)) * self.denom_inv
        # The m=0 component of u*D^a(u_x) cancels pairwise for real fields;
        # pin it to keep the mean machine-exact.
        out[0] = 0.0
        if not np.all(np.isfinite(out)):
            raise BlowUpError("non-finite value in right-hand side evaluation")
        return out

    def half_from_field(self, U: SpectralField) -> np.ndarray:
        h = grid._half_grid_relative(U)
        h[0] = h[0].real
        return h

    def field_from_half(self, c: np.ndarray) -> SpectralField:
        return SpectralField(self.domain, grid._full_from_half(self.domain, c))


@lru_cache(maxsize=64)
def _workspace(domain: Domain, params: ModelParams) -> RhsWorkspace:
    return RhsWorkspace(domain, params)


def rhs(U: SpectralField, p: ModelParams) -> SpectralField:
    """Semi-discrete time derivative dU/dt of a Hermitian-symmetric state."""
    if grid.hermitian_defect(U) > 1e-10:
        raise SymmetryError("rhs requires a Hermitian-symmetric (real) state")
    ws = _workspace(U.domain, p)
    return ws.field_from_half(ws.rhs_half(ws.half_from_field(U)))


def rhs_reference(U: SpectralField, p: ModelParams) -> SpectralField:
    """Slow reference assembly of the same right-hand side via direct convolution sums.

    Uses :func:`fracwave.grid.convolution_oracle` for every quadratic term
    (including u*u_x, with no derivative-of-square shortcut), so it shares no
    product code with :func:`rhs`.
    """
    d = U.domain
    kappa = d.wavenumbers
    kalpha = np.abs(kappa) ** p.alpha
    kalpha[d.N] = 0.0
    u_sq = grid.convolution_oracle(U, U)
    a_conv = grid.convolution_oracle(U, grid.derivative(U))
    b_conv = grid.convolution_oracle(U, grid.frac_laplacian(grid.derivative(U), p.alpha))
    flux = p.kappa1 * U.coeffs + 1.5 * p.gamma * u_sq.coeffs
    out = -(1j * kappa * flux + p.kappa2 * (2.0 * kalpha * a_conv.coeffs + b_conv.coeffs))
    out /= 1.0 + kalpha
    return SpectralField(d, out)


def mass(U: SpectralField) -> float:
    """Integral of u over the period: L * Re(c_0)."""
    return float(U.domain.length * U.coeffs[U.domain.N].real)


def energy(U: SpectralField, alpha: float) -> float:
    """Integral of u^2 + |D^{alpha/2} u|^2: L * sum (1 + |kappa_k|^alpha) |c_k|^2."""
    kalpha = np.abs(U.domain.wavenumbers) ** alpha
    kalpha[U.domain.N] = 0.0
    return float(U.domain.length * np.sum((1.0 + kalpha) * np.abs(U.coeffs) ** 2))


def energy_derivative(U: SpectralField, p: ModelParams) -> float:
    """Analytic d/dt of the energy along the flow: 2L * sum (1+|k|^a) Re(conj(c) rhs).

    Vanishes identically for the semi-discrete scheme; exposed so conservation
    can be checked before any time stepping.
    """
    dU = rhs(U, p)
    kalpha = np.abs(U.domain.wavenumbers) ** p.alpha
    kalpha[U.domain.N] = 0.0
    s = np.sum((1.0 + kalpha) * (np.conj(U.coeffs) * dU.coeffs).real)
    return float(2.0 * U.domain.length * s)
