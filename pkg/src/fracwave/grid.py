"""Periodic grids, Fourier transforms, and spectral operators.

Conventions used throughout the package:

* A real periodic function u on [x_left, x_left + L) is represented either by
  mean-normalized Fourier coefficients

      c_k = (1/L) * integral u(x) exp(-i*kappa_k*x) dx,  kappa_k = 2*pi*k/L,

  for k = -N..N (so c_0 is the spatial mean and Parseval reads
  ||u||^2 = L * sum |c_k|^2), or by M real samples on the uniform grid
  x_j = x_left + j*L/M.

* Quadratic nonlinearities are evaluated pointwise on a padded grid of at
  least 3N+1 points and truncated back to |k| <= N, which makes the
  pseudospectral product identical (to roundoff) to the truncated convolution
  sum computed by :func:`convolution_oracle`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Mapping

import numpy as np
from scipy import fft as sfft

from .errors import DomainMismatchError, ResolutionError, SymmetryError

__all__ = [
    "Domain",
    "SpectralField",
    "PhysicalField",
    "to_physical",
    "to_spectral",
    "project",
    "frac_laplacian",
    "derivative",
    "dealiased_product",
    "convolution_oracle",
    "l2_norm",
    "linf_norm",
    "sobolev_norm",
    "h_alpha_half_seminorm",
    "inner_product",
    "hermitian_defect",
]

# Relative tolerance for the Hermitian-symmetry / imaginary-residue guards in
# physical-space conversions.
_SYMMETRY_RTOL = 1e-10


@dataclass(frozen=True)
class Domain:
    """Periodic interval [x_left, x_left + length) with 2N+1 retained modes.

    M is the physical grid size used for nonlinear products; M >= 3N+1 keeps
    quadratic products alias-free after truncation.
    """

    x_left: float
    length: float
    N: int
    M: int

    def __post_init__(self):
        if not np.isfinite(self.x_left):
            raise ValueError("x_left must be finite")
        if not (np.isfinite(self.length) and self.length > 0):
            raise ValueError(f"domain length must be positive, got {self.length}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.M < 3 * self.N + 1:
            raise ValueError(
                f"M={self.M} is below the dealiasing minimum 3N+1={3 * self.N + 1}"
            )

    @classmethod
    def periodic(cls, x_left: float, length: float, N: int, M: int | None = None) -> "Domain":
        """Domain with the default dealiasing grid M = 3N+1."""
        return cls(x_left, length, N, 3 * N + 1 if M is None else M)

    def wavenumber(self, k: int | np.ndarray):
        """Physical wavenumber 2*pi*k/length (exactly 0 for k = 0)."""
        return 2.0 * np.pi * np.asarray(k) / self.length

    @property
    def wavenumbers(self) -> np.ndarray:
        """Wavenumbers for k = -N..N in coefficient order."""
        return self.wavenumber(np.arange(-self.N, self.N + 1))

    @property
    def modes(self) -> np.ndarray:
        """Integer mode indices -N..N in coefficient order."""
        return np.arange(-self.N, self.N + 1)

    def grid(self, M: int | None = None) -> np.ndarray:
        """Uniform sample points x_j = x_left + j*length/M, j = 0..M-1."""
        M = self.M if M is None else M
        return self.x_left + self.length * np.arange(M) / M


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class SpectralField:
    """Fourier coefficients c_k, k = -N..N, of a real periodic function.

    coeffs[j] holds c_{j-N}; use :meth:`coeff` for mode-indexed access.
    """

    domain: Domain
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.ascontiguousarray(self.coeffs, dtype=np.complex128)
        if c.shape != (2 * self.domain.N + 1,):
            raise ValueError(
                f"expected {2 * self.domain.N + 1} coefficients, got shape {c.shape}"
            )
        if not np.isfinite(c).all():
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "coeffs", _freeze(c))

    @classmethod
    def zeros(cls, domain: Domain) -> "SpectralField":
        return cls(domain, np.zeros(2 * domain.N + 1, dtype=np.complex128))

    @classmethod
    def from_modes(cls, domain: Domain, modes: Mapping[int, complex]) -> "SpectralField":
        """Field with the given {k: c_k} entries and zeros elsewhere."""
        c = np.zeros(2 * domain.N + 1, dtype=np.complex128)
        for k, v in modes.items():
            if abs(k) > domain.N:
                raise ValueError(f"mode {k} outside retained band |k| <= {domain.N}")
            c[domain.N + k] = v
        return cls(domain, c)

    def coeff(self, k: int) -> complex:
        if abs(k) > self.domain.N:
            raise ValueError(f"mode {k} outside retained band")
        return complex(self.coeffs[self.domain.N + k])


@dataclass(frozen=True)
class PhysicalField:
    """Real samples on the uniform grid x_j = x_left + j*length/M, j = 0..M-1."""

    domain: Domain
    samples: np.ndarray

    def __post_init__(self):
        s = np.ascontiguousarray(self.samples, dtype=np.float64)
        if s.ndim != 1 or s.size < 1:
            raise ValueError("samples must be a non-empty 1-d array")
        if not np.isfinite(s).all():
            raise ValueError("samples must be finite (no NaN/Inf)")
        object.__setattr__(self, "samples", _freeze(s))

    @property
    def grid(self) -> np.ndarray:
        return self.domain.grid(self.samples.size)


def hermitian_defect(f: SpectralField) -> float:
    """max_k |c_{-k} - conj(c_k)| relative to the coefficient scale."""
    c = f.coeffs
    scale = float(np.max(np.abs(c)))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(c[::-1] - np.conj(c)))) / scale


def _require_same_domain(f: SpectralField, g: SpectralField):
    if f.domain != g.domain:
        raise DomainMismatchError(f"fields live on different domains: {f.domain} vs {g.domain}")


def _half_grid_relative(f: SpectralField) -> np.ndarray:
    """Coefficients for k = 0..N with phases referenced to x_left (rfft layout)."""
    d = f.domain
    k = np.arange(d.N + 1)
    return f.coeffs[d.N:] * np.exp(1j * d.wavenumber(k) * d.x_left)


def _full_from_half(domain: Domain, half_rel: np.ndarray) -> np.ndarray:
    """Absolute-phase full spectrum -N..N from grid-relative half spectrum."""
    k = np.arange(domain.N + 1)
    half_abs = half_rel * np.exp(-1j * domain.wavenumber(k) * domain.x_left)
    full = np.empty(2 * domain.N + 1, dtype=np.complex128)
    full[domain.N:] = half_abs
    full[:domain.N] = np.conj(half_abs[1:][::-1])
    return full


def _product_grid_size(domain: Domain) -> int:
    """Physical grid size used for pointwise products (test hook)."""
    return domain.M


def to_physical(f: SpectralField, M: int | None = None) -> PhysicalField:
    """Evaluate the truncated Fourier series on the uniform M-point grid.

    Requires M >= 2N+1 and a Hermitian-symmetric input; the imaginary residue
    of the synthesis is checked against _SYMMETRY_RTOL and discarded.
    """
    d = f.domain
    M = d.M if M is None else M
    if M < 2 * d.N + 1:
        raise ResolutionError(f"M={M} cannot represent modes up to N={d.N} (need M >= 2N+1)")
    if hermitian_defect(f) > _SYMMETRY_RTOL:
        raise SymmetryError(
            f"coefficients are not Hermitian-symmetric (defect {hermitian_defect(f):.3e})"
        )
    bins = np.zeros(M, dtype=np.complex128)
    phase = np.exp(1j * d.wavenumbers * d.x_left)
    shifted = f.coeffs * phase
    k = d.modes
    bins[k[d.N:]] = shifted[d.N:]
    bins[k[:d.N] + M] = shifted[:d.N]
    u = sfft.ifft(bins) * M
    scale = float(np.max(np.abs(u.real))) or 1.0
    residue = float(np.max(np.abs(u.imag)))
    if residue > _SYMMETRY_RTOL * scale:
        raise SymmetryError(f"imaginary residue {residue:.3e} exceeds {_SYMMETRY_RTOL:.0e} relative")
    return PhysicalField(d, u.real)


def to_spectral(u: PhysicalField, N: int | None = None) -> SpectralField:
    """Discrete Fourier coefficients of the samples, truncated to |k| <= N.

    Exact for trigonometric polynomials of degree <= N when the sample count
    satisfies M >= 2N+1.
    """
    d = u.domain
    N = d.N if N is None else N
    M = u.samples.size
    if M < 2 * N + 1:
        raise ResolutionError(f"{M} samples cannot resolve N={N} modes (need M >= 2N+1)")
    half = sfft.rfft(u.samples)[: N + 1] / M
    if N == d.N:
        dom = d
    else:
        dom = Domain(d.x_left, d.length, N, max(d.M, 3 * N + 1))
    k = np.arange(N + 1)
    half_abs = half * np.exp(-1j * dom.wavenumber(k) * dom.x_left)
    full = np.empty(2 * N + 1, dtype=np.complex128)
    full[N:] = half_abs
    full[:N] = np.conj(half_abs[1:][::-1])
    return SpectralField(dom, full)


def project(f: SpectralField, N_target: int) -> SpectralField:
    """Orthogonal projection onto modes |k| <= N_target (truncation)."""
    d = f.domain
    if N_target > d.N:
        raise ResolutionError(f"cannot extend: N_target={N_target} > N={d.N}")
    if N_target < 1:
        raise ValueError("N_target must be >= 1")
    if N_target == d.N:
        return f
    lo, hi = d.N - N_target, d.N + N_target + 1
    return SpectralField(replace(d, N=N_target), f.coeffs[lo:hi].copy())


def frac_laplacian(f: SpectralField, alpha: float) -> SpectralField:
    """Fourier multiplier |kappa_k|^alpha; the k = 0 mode is annihilated.

    For alpha = 0 the multiplier at k = 0 is defined as 0 (the operator always
    removes the mean).
    """
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    mult = np.abs(f.domain.wavenumbers) ** alpha
    mult[f.domain.N] = 0.0
    return SpectralField(f.domain, f.coeffs * mult)


def derivative(f: SpectralField) -> SpectralField:
    """Spectral derivative: c_k -> i*kappa_k*c_k."""
    return SpectralField(f.domain, 1j * f.domain.wavenumbers * f.coeffs)


def dealiased_product(f: SpectralField, g: SpectralField) -> SpectralField:
    """Truncated coefficients of the pointwise product f*g.

    Both fields are synthesized on the padded M-point grid (M >= 3N+1),
    multiplied pointwise, and transformed back; the result is alias-free for
    quadratic nonlinearities and equals :func:`convolution_oracle`.
    """
    _require_same_domain(f, g)
    d = f.domain
    P = _product_grid_size(d)
    fh = _half_grid_relative(f)
    gh = _half_grid_relative(g)
    pad_f = np.zeros(P // 2 + 1, dtype=np.complex128)
    pad_g = np.zeros(P // 2 + 1, dtype=np.complex128)
    pad_f[: d.N + 1] = fh * P
    pad_g[: d.N + 1] = gh * P
    w = sfft.irfft(pad_f, n=P) * sfft.irfft(pad_g, n=P)
    half = sfft.rfft(w)[: d.N + 1] / P
    return SpectralField(d, _full_from_half(d, half))


def convolution_oracle(f: SpectralField, g: SpectralField) -> SpectralField:
    """Direct O(N^2) truncated convolution (ground truth for dealiased_product).

    out_m = sum_{k+l=m, |k|,|l| <= N} f_k g_l, evaluated term by term without
    any FFT.
    """
    _require_same_domain(f, g)
    N = f.domain.N
    fc, gc = f.coeffs, g.coeffs
    out = np.zeros(2 * N + 1, dtype=np.complex128)
    for m in range(-N, N + 1):
        k_lo = max(-N, m - N)
        k_hi = min(N, m + N)
        ks = np.arange(k_lo, k_hi + 1)
        out[N + m] = np.sum(fc[N + ks] * gc[N + (m - ks)])
    return SpectralField(f.domain, out)


def inner_product(f: SpectralField, g: SpectralField) -> complex:
    """L^2 inner product (f, g) = integral f*conj(g) = L * sum c_k conj(d_k)."""
    _require_same_domain(f, g)
    return complex(f.domain.length * np.sum(f.coeffs * np.conj(g.coeffs)))


def l2_norm(f: SpectralField) -> float:
    """||f|| = sqrt(L * sum |c_k|^2) (Parseval under mean normalization)."""
    return float(np.sqrt(f.domain.length * np.sum(np.abs(f.coeffs) ** 2)))


def linf_norm(u: PhysicalField) -> float:
    """max_j |u(x_j)| over the sample grid."""
    return float(np.max(np.abs(u.samples)))


def sobolev_norm(f: SpectralField, r: float) -> float:
    """H^r norm with weight (1 + |kappa_k|^2)^r on |c_k|^2."""
    if r < 0:
        raise ValueError(f"r must be >= 0, got {r}")
    w = (1.0 + f.domain.wavenumbers**2) ** r
    return float(np.sqrt(f.domain.length * np.sum(w * np.abs(f.coeffs) ** 2)))


def h_alpha_half_seminorm(f: SpectralField, alpha: float) -> float:
    """Seminorm |D^{alpha/2} f| with weight |kappa_k|^alpha on |c_k|^2."""
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")
    w = np.abs(f.domain.wavenumbers) ** alpha
    w[f.domain.N] = 0.0
    return float(np.sqrt(f.domain.length * np.sum(w * np.abs(f.coeffs) ** 2)))
