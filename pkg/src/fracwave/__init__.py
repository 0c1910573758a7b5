"""Periodic Fourier spectral Galerkin solver for the fractional Camassa-Holm
family (fCH, fBBM, classical CH/BBM, regularized Benjamin-Ono), with
conservation diagnostics, exact-solution oracles, and a convergence harness."""

from .errors import (
    BlowUpError,
    ConfigError,
    DomainMismatchError,
    FracwaveError,
    ResolutionError,
    SymmetryError,
)
from .grid import (
    Domain,
    PhysicalField,
    SpectralField,
    convolution_oracle,
    dealiased_product,
    derivative,
    frac_laplacian,
    h_alpha_half_seminorm,
    inner_product,
    l2_norm,
    linf_norm,
    project,
    sobolev_norm,
    to_physical,
    to_spectral,
)
from .integrate import IntegrationConfig, integrate, rk4_step
from .model import Diagnostics, ModelParams, energy, energy_derivative, mass, rhs

__version__ = "0.1.0"
