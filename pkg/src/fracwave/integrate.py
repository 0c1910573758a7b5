"""Fixed-step RK4 integration of the coefficient ODE system.

The automatic step size follows dt = 0.001/k_max with k_max = 2*pi*N/L (the
maximum resolved wavenumber), then shrinks uniformly so t_end/dt is an
integer; explicit step sizes are shrunk the same way, so every step is equal
and no ragged final step occurs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import fft as sfft

from .errors import BlowUpError, ConfigError
from .grid import Domain, SpectralField
from .model import Diagnostics, LINF_BLOWUP, ModelParams, RhsWorkspace, _workspace

__all__ = ["IntegrationConfig", "rk4_step", "integrate"]

_MAX_STEPS = 1_000_000_000


@dataclass(frozen=True)
class IntegrationConfig:
    """Final time, step size (or "auto"), and diagnostic sampling cadence."""

    t_end: float
    dt: float | str = "auto"
    sample_every: int | None = None

    def __post_init__(self):
        if not (np.isfinite(self.t_end) and self.t_end > 0):
            raise ConfigError(f"t_end must be positive, got {self.t_end}")
        if isinstance(self.dt, str):
            if self.dt != "auto":
                raise ConfigError(f'dt must be a positive number or "auto", got {self.dt!r}')
        elif not (np.isfinite(self.dt) and 0 < self.dt <= self.t_end):
            raise ConfigError(f"dt must satisfy 0 < dt <= t_end, got {self.dt}")
        if self.sample_every is not None and self.sample_every < 1:
            raise ConfigError("sample_every must be a positive integer")

    def resolve(self, domain: Domain) -> tuple[float, int, int]:
        """Concrete (dt, n_steps, sample_every) for the given domain."""
        if self.dt == "auto":
            k_max = 2.0 * np.pi * domain.N / domain.length
            dt_raw = 0.001 / k_max
        else:
            dt_raw = float(self.dt)
        n = max(1, math.ceil(self.t_end / dt_raw - 1e-9))
        if n > _MAX_STEPS:
            raise ConfigError(f"step count {n} exceeds the {_MAX_STEPS} guard")
        dt = self.t_end / n
        if self.sample_every is not None:
            every = self.sample_every
        else:
            every = max(1, round(0.01 * n))
        return dt, n, every


def _rk4_half(ws: RhsWorkspace, c: np.ndarray, dt: float) -> np.ndarray:
    k1 = ws.rhs_half(c)
    k2 = ws.rhs_half(c + (0.5 * dt) * k1)
    k3 = ws.rhs_half(c + (0.5 * dt) * k2)
    k4 = ws.rhs_half(c + dt * k3)
    return c + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step(U: SpectralField, dt: float, p: ModelParams) -> SpectralField:
    """One classical four-stage RK4 step of size dt."""
    if not (np.isfinite(dt) and dt > 0):
        raise ConfigError(f"dt must be positive, got {dt}")
    ws = _workspace(U.domain, p)
    return ws.field_from_half(_rk4_half(ws, ws.half_from_field(U), dt))


class _Sampler:
    """Accumulates diagnostic samples from half-spectrum states."""

    def __init__(self, ws: RhsWorkspace):
        d = ws.domain
        self.L = d.length
        self.weights = 1.0 + ws.kalpha
        self.pad = ws.pad
        self.N = d.N
        self.times: list[float] = []
        self.mass: list[float] = []
        self.energy: list[float] = []
        self.l2: list[float] = []
        self.linf: list[float] = []

    def sample(self, t: float, c: np.ndarray) -> float:
        sq = np.abs(c) ** 2
        sq[1:] *= 2.0  # Hermitian half-spectrum double-counts k != 0
        bins = np.zeros(self.pad // 2 + 1, dtype=np.complex128)
        bins[: self.N + 1] = c * self.pad
        linf = float(np.max(np.abs(sfft.irfft(bins, n=self.pad))))
        self.times.append(t)
        self.mass.append(self.L * c[0].real)
        self.energy.append(self.L * float(np.sum(self.weights * sq)))
        self.l2.append(float(np.sqrt(self.L * np.sum(sq))))
        self.linf.append(linf)
        return linf

    def diagnostics(self) -> Diagnostics:
        return Diagnostics(
            np.array(self.times), np.array(self.mass),
            np.array(self.energy), np.array(self.l2), np.array(self.linf),
        )


def integrate(
    U0: SpectralField,
    cfg: IntegrationConfig,
    p: ModelParams,
    spectral_filter: bool = False,
    t0: float = 0.0,
) -> tuple[SpectralField, Diagnostics]:
    """Advance U0 to t0 + t_end; diagnostics include the first and last instants.

    Raises BlowUpError (carrying the last good time) if the state leaves the
    finite range or its sup norm exceeds LINF_BLOWUP.
    """
    ws = _workspace(U0.domain, p)
    dt, n, every = cfg.resolve(U0.domain)
    filt = None
    if spectral_filter:
        k = np.arange(U0.domain.N + 1)
        filt = np.exp(-36.0 * (k / U0.domain.N) ** 36)
    c = ws.half_from_field(U0)
    sampler = _Sampler(ws)
    sampler.sample(t0, c)
    for step in range(1, n + 1):
        t_prev = t0 + (step - 1) * dt
        try:
            c = _rk4_half(ws, c, dt)
        except BlowUpError as err:
            raise BlowUpError(str(err), time=t_prev) from None
        if filt is not None:
            c = c * filt
        if not np.all(np.isfinite(c)):
            raise BlowUpError("state became non-finite", time=t_prev)
        if step % every == 0 or step == n:
            t = t0 + cfg.t_end if step == n else t0 + step * dt
            linf = sampler.sample(t, c)
            if linf > LINF_BLOWUP:
                raise BlowUpError(f"sup norm {linf:.3e} exceeded {LINF_BLOWUP:.0e}", time=t)
    return ws.field_from_half(c), sampler.diagnostics()
