"""Exception types shared across the package."""


class FracwaveError(Exception):
    """Base class for all package errors."""


class ResolutionError(FracwaveError):
    """A grid is too coarse (or a mode count too large) for the requested operation."""


class SymmetryError(FracwaveError):
    """Coefficients violate the Hermitian symmetry required of real fields."""


class DomainMismatchError(FracwaveError):
    """Two fields that must share a domain do not."""


class BlowUpError(FracwaveError):
    """The numerical solution left the finite range (NaN/Inf or sup-norm runaway).

    Attributes:
        time: simulation time of the last good state, or None if unknown.
    """

    def __init__(self, message: str, time: float | None = None):
        super().__init__(message)
        self.time = time


class ConfigError(FracwaveError):
    """Invalid run configuration (bad value, unknown key, step-count overflow)."""
