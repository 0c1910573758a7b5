"""Executable property suites: operator identities, oracle equivalence,
conservation, and temporal-order checks.

These back the ``fracwave verify`` command and are reused directly by the
test suite, so a failure reports the violated invariant together with the
witness inputs (seed, resolution, alpha) that produced it.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import grid as g
from . import model as m
from .grid import Domain, SpectralField
from .integrate import IntegrationConfig, integrate
from .model import ModelParams, RhsWorkspace

__all__ = ["CheckResult", "random_field", "run_checks", "QUICK_CHECKS", "FULL_CHECKS"]

ALPHAS = (1.0, 1.5, 2.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    elapsed_s: float

    def __post_init__(self):
        object.__setattr__(self, "passed", bool(self.passed))


def random_field(
    domain: Domain,
    rng: np.random.Generator,
    decay: float = 1.5,
    zero_mean: bool = False,
    scale: float = 1.0,
) -> SpectralField:
    """Random real field with |c_k| ~ scale/(1+|k|)^decay."""
    N = domain.N
    amp = scale / (1.0 + np.arange(1, N + 1)) ** decay
    half = np.empty(N + 1, dtype=np.complex128)
    half[0] = 0.0 if zero_mean else scale * rng.standard_normal()
    half[1:] = amp * (rng.standard_normal(N) + 1j * rng.standard_normal(N))
    full = np.concatenate([np.conj(half[1:][::-1]), half])
    return SpectralField(domain, full)


def _domains() -> list[Domain]:
    return [Domain.periodic(-np.pi, 2 * np.pi, 16), Domain.periodic(0.0, 50.0, 12)]


def check_symmetry(seed: int = 101, n_fields: int = 100) -> CheckResult:
    """<D^a xi, eta> = <xi, D^a eta> to 1e-11 relative."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, ""
    for d in _domains():
        for alpha in ALPHAS:
            for i in range(n_fields):
                xi, eta = random_field(d, rng), random_field(d, rng)
                lhs = g.inner_product(g.frac_laplacian(xi, alpha), eta)
                rhs = g.inner_product(xi, g.frac_laplacian(eta, alpha))
                scale = max(abs(lhs), abs(rhs), 1e-30)
                rel = abs(lhs - rhs) / scale
                if rel > worst:
                    worst, witness = rel, f"seed={seed} field#{i} alpha={alpha} L={d.length:g}"
    return CheckResult(
        "fractional-laplacian symmetry", worst <= 1e-11,
        f"max relative defect {worst:.2e} (tol 1e-11) [{witness}]",
        time.perf_counter() - t0,
    )


def check_orthogonality(seed: int = 102, n_fields: int = 100) -> CheckResult:
    """<D^a xi_x, xi> = 0 to 1e-11 of ||xi||^2."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, ""
    for d in _domains():
        for alpha in ALPHAS:
            for i in range(n_fields):
                xi = random_field(d, rng)
                val = abs(g.inner_product(g.frac_laplacian(g.derivative(xi), alpha), xi))
                rel = val / g.l2_norm(xi) ** 2
                if rel > worst:
                    worst, witness = rel, f"seed={seed} field#{i} alpha={alpha} L={d.length:g}"
    return CheckResult(
        "D^a/derivative orthogonality", worst <= 1e-11,
        f"max |<D^a xi_x, xi>|/||xi||^2 = {worst:.2e} (tol 1e-11) [{witness}]",
        time.perf_counter() - t0,
    )


def check_semigroup(seed: int = 103, n_fields: int = 100) -> CheckResult:
    """D^{a1} D^{a2} = D^{a1+a2} coefficientwise to 1e-12 relative."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, ""
    pairs = [(0.5, 0.5), (1.0, 1.0), (1.0, 0.5), (1.5, 0.5)]
    for d in _domains():
        for a1, a2 in pairs:
            for i in range(n_fields):
                xi = random_field(d, rng)
                once = g.frac_laplacian(xi, a1 + a2)
                twice = g.frac_laplacian(g.frac_laplacian(xi, a2), a1)
                scale = max(float(np.max(np.abs(once.coeffs))), 1e-30)
                rel = float(np.max(np.abs(once.coeffs - twice.coeffs))) / scale
                if rel > worst:
                    worst, witness = rel, f"seed={seed} field#{i} a1={a1} a2={a2} L={d.length:g}"
    return CheckResult(
        "fractional-laplacian semigroup", worst <= 1e-12,
        f"max relative defect {worst:.2e} (tol 1e-12) [{witness}]",
        time.perf_counter() - t0,
    )


def check_projection_commutes(seed: int = 104, n_fields: int = 100) -> CheckResult:
    """P_N D^a = D^a P_N exactly at the coefficient level."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    for d in _domains():
        for alpha in ALPHAS:
            for i in range(n_fields):
                xi = random_field(d, rng)
                n_t = d.N // 2
                a = g.project(g.frac_laplacian(xi, alpha), n_t)
                b = g.frac_laplacian(g.project(xi, n_t), alpha)
                if not np.array_equal(a.coeffs, b.coeffs):
                    return CheckResult(
                        "projection commutes with D^a", False,
                        f"coefficient mismatch [seed={seed} field#{i} alpha={alpha}]",
                        time.perf_counter() - t0,
                    )
    return CheckResult(
        "projection commutes with D^a", True, "bit-exact over all fields",
        time.perf_counter() - t0,
    )


def check_bernstein(seed: int = 105, n_fields: int = 100) -> CheckResult:
    """||v_N||_inf <= sqrt((2N+1)/L) ||v_N|| with the explicit constant."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = -np.inf, ""
    for d in _domains():
        bound_const = np.sqrt((2 * d.N + 1) / d.length)
        for i in range(n_fields):
            v = random_field(d, rng, decay=0.5)
            dense = g.to_physical(v, 8 * d.N + 1)
            margin = g.linf_norm(dense) - bound_const * g.l2_norm(v)
            if margin > worst:
                worst, witness = margin, f"seed={seed} field#{i} L={d.length:g}"
    return CheckResult(
        "Bernstein inequality", worst <= 1e-12,
        f"max (||v||_inf - sqrt((2N+1)/L)||v||) = {worst:.2e} [{witness}]",
        time.perf_counter() - t0,
    )


def check_product_estimate(seed: int = 106, n_fields: int = 60) -> CheckResult:
    """||D^a(xi eta)|| <= max(1, 2^(a-1)) (||xi||_inf ||D^a eta|| + ||eta||_inf ||D^a xi||)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = -np.inf, ""
    for d in _domains():
        for alpha in ALPHAS:
            c_alpha = max(1.0, 2.0 ** (alpha - 1.0))
            for i in range(n_fields):
                xi, eta = random_field(d, rng), random_field(d, rng)
                prod = _exact_product(xi, eta)
                lhs = g.l2_norm(g.frac_laplacian(prod, alpha))
                xi_inf = g.linf_norm(g.to_physical(xi, 8 * d.N + 1))
                eta_inf = g.linf_norm(g.to_physical(eta, 8 * d.N + 1))
                rhs = c_alpha * (
                    xi_inf * g.l2_norm(g.frac_laplacian(eta, alpha))
                    + eta_inf * g.l2_norm(g.frac_laplacian(xi, alpha))
                )
                margin = (lhs - rhs) / rhs
                if margin > worst:
                    worst, witness = margin, f"seed={seed} field#{i} alpha={alpha} L={d.length:g}"
    return CheckResult(
        "product estimate (norm form)", worst <= 1e-12,
        f"max relative margin {worst:.2e} [{witness}]",
        time.perf_counter() - t0,
    )


def _exact_product(f: SpectralField, gfield: SpectralField) -> SpectralField:
    """Unaliased, untruncated product of two band-limited fields (degree 2N)."""
    d = f.domain
    big = Domain(d.x_left, d.length, 2 * d.N, 6 * d.N + 1)
    fine = 4 * d.N + 1
    uf = g.to_physical(SpectralField(big, _embed(f.coeffs, d.N, big.N)), fine)
    ug = g.to_physical(SpectralField(big, _embed(gfield.coeffs, d.N, big.N)), fine)
    w = g.PhysicalField(big, uf.samples * ug.samples)
    return g.to_spectral(w, big.N)


def _embed(coeffs: np.ndarray, n_small: int, n_big: int) -> np.ndarray:
    out = np.zeros(2 * n_big + 1, dtype=np.complex128)
    out[n_big - n_small: n_big + n_small + 1] = coeffs
    return out


def check_spectral_decay() -> CheckResult:
    """||u - P_N u|| halves per unit increase of N for coefficients 2^-|k|."""
    t0 = time.perf_counter()
    d = Domain.periodic(-np.pi, 2 * np.pi, 24)
    k = np.arange(-d.N, d.N + 1)
    u = SpectralField(d, (2.0 ** -np.abs(k)).astype(np.complex128))
    tails = []
    for n_t in range(4, 12):
        resid = u.coeffs.copy()
        resid[d.N - n_t: d.N + n_t + 1] = 0.0
        tails.append(np.sqrt(d.length * np.sum(np.abs(resid) ** 2)))
    ratios = [tails[i + 1] / tails[i] for i in range(len(tails) - 1)]
    ok = all(r <= 0.5 + 1e-12 for r in ratios)
    return CheckResult(
        "analytic-field spectral decay", ok,
        f"tail ratios per unit N: {', '.join(f'{r:.4f}' for r in ratios)} (need <= 0.5)",
        time.perf_counter() - t0,
    )


def check_product_oracle(seed: int = 107, n_pairs: int = 100) -> CheckResult:
    """dealiased_product == convolution_oracle to 1e-12 relative for N <= 8."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, ""
    for trial in range(n_pairs):
        N = 1 + trial % 8
        d = Domain.periodic(-np.pi, 2 * np.pi, N)
        f1, f2 = random_field(d, rng), random_field(d, rng)
        fast = g.dealiased_product(f1, f2)
        slow = g.convolution_oracle(f1, f2)
        scale = max(float(np.max(np.abs(slow.coeffs))), 1e-30)
        rel = float(np.max(np.abs(fast.coeffs - slow.coeffs))) / scale
        if rel > worst:
            worst, witness = rel, f"seed={seed} pair#{trial} N={N}"
    return CheckResult(
        "dealiased product vs convolution oracle", worst <= 1e-12,
        f"max relative defect {worst:.2e} (tol 1e-12) [{witness}]",
        time.perf_counter() - t0,
    )


def check_rhs_oracle(seed: int = 108, n_fields: int = 40) -> CheckResult:
    """Assembled rhs matches the direct convolution-sum assembly for N <= 8."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    worst, witness = 0.0, ""
    for N in range(1, 9):
        d = Domain.periodic(0.0, 50.0, N)
        for pname, p in m.PRESETS.items():
            # fresh workspace: verification must not trust the module cache
            ws = RhsWorkspace(d, p)
            for i in range(max(1, n_fields // 8)):
                U = random_field(d, rng)
                fast = ws.field_from_half(ws.rhs_half(ws.half_from_field(U)))
                slow = m.rhs_reference(U, p)
                scale = max(float(np.max(np.abs(slow.coeffs))), 1e-30)
                rel = float(np.max(np.abs(fast.coeffs - slow.coeffs))) / scale
                if rel > worst:
                    worst, witness = rel, f"seed={seed} N={N} preset={pname} field#{i}"
    return CheckResult(
        "rhs vs convolution-sum assembly", worst <= 1e-12,
        f"max relative defect {worst:.2e} (tol 1e-12) [{witness}]",
        time.perf_counter() - t0,
    )


def check_conservation_derivatives(seed: int = 109, n_fields: int = 25) -> CheckResult:
    """Analytic mass and energy derivatives of the rhs vanish (1e-10 relative)."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    d = Domain.periodic(0.0, 50.0, 32)
    worst, witness = 0.0, ""
    for pname, p in m.PRESETS.items():
        for i in range(n_fields):
            U = random_field(d, rng)
            dU = m.rhs(U, p)
            dm = abs(d.length * dU.coeffs[d.N].real) / max(abs(m.mass(U)), 1.0)
            de = abs(m.energy_derivative(U, p)) / m.energy(U, p.alpha)
            rel = max(dm, de)
            if rel > worst:
                worst, witness = rel, f"seed={seed} preset={pname} field#{i}"
    return CheckResult(
        "semi-discrete conservation (derivatives)", worst <= 1e-10,
        f"max relative derivative {worst:.2e} (tol 1e-10) [{witness}]",
        time.perf_counter() - t0,
    )


def check_rk4_order_linear() -> CheckResult:
    """Global time order ~4 against a dt/8 reference on a single linear mode."""
    t0 = time.perf_counter()
    d = Domain.periodic(-np.pi, 2 * np.pi, 8)
    p = ModelParams(4.0, 1.0 / 3.0, 0.0, 1.0)
    amp = 1e-7
    U0 = SpectralField.from_modes(d, {3: amp, -3: amp})
    slopes = _order_slopes(U0, p, t_end=10.0, dts=(0.05, 0.025, 0.0125))
    ok = all(abs(s - 4.0) <= 0.3 for s in slopes)
    return CheckResult(
        "RK4 global order (linear mode)", ok,
        f"slopes {', '.join(f'{s:.3f}' for s in slopes)} (need 4 +- 0.3)",
        time.perf_counter() - t0,
    )


def _order_slopes(U0: SpectralField, p: ModelParams, t_end: float, dts: tuple) -> list[float]:
    ref, _ = integrate(U0, IntegrationConfig(t_end, dts[-1] / 8.0), p)
    errs = []
    for dt in dts:
        sol, _ = integrate(U0, IntegrationConfig(t_end, dt), p)
        errs.append(float(np.sqrt(U0.domain.length * np.sum(np.abs(sol.coeffs - ref.coeffs) ** 2))))
    return [float(np.log2(errs[i] / errs[i + 1])) for i in range(len(errs) - 1)]


def check_rk4_order_bbm() -> CheckResult:
    """Global time order ~4 on the BBM solitary-wave run at N=256, T=50."""
    from . import exact

    t0 = time.perf_counter()
    d = Domain.periodic(-100.0, 200.0, 256)
    U0 = exact.bbm_field(d, 2.0, -60.0)
    slopes = _order_slopes(U0, ModelParams.fbbm(2.0), t_end=50.0, dts=(0.025, 0.0125, 0.00625))
    ok = all(abs(s - 4.0) <= 0.3 for s in slopes)
    return CheckResult(
        "RK4 global order (BBM soliton, N=256)", ok,
        f"slopes {', '.join(f'{s:.3f}' for s in slopes)} (need 4 +- 0.3)",
        time.perf_counter() - t0,
    )


def check_integrated_conservation() -> CheckResult:
    """Mass/energy drift on a short auto-dt peakon run (full battery in acceptance)."""
    from . import exact

    t0 = time.perf_counter()
    d = Domain.periodic(0.0, 50.0, 64)
    U0 = exact.peakon_field(d, 1.0, 25.0)
    _, diag = integrate(U0, IntegrationConfig(1.0, "auto"), ModelParams.camassa_holm())
    md = float(np.max(np.abs(diag.mass - diag.mass[0])) / abs(diag.mass[0]))
    ed = float(np.max(np.abs(diag.energy - diag.energy[0])) / diag.energy[0])
    ok = md <= 1e-10 and ed <= 1e-8
    return CheckResult(
        "integrated conservation (peakon, auto dt)", ok,
        f"mass drift {md:.2e} (tol 1e-10), energy drift {ed:.2e} (tol 1e-8)",
        time.perf_counter() - t0,
    )


QUICK_CHECKS = [
    check_symmetry,
    check_orthogonality,
    check_semigroup,
    check_projection_commutes,
    check_bernstein,
    check_product_estimate,
    check_spectral_decay,
    check_product_oracle,
    check_rhs_oracle,
    check_conservation_derivatives,
]

FULL_CHECKS = QUICK_CHECKS + [
    check_rk4_order_linear,
    check_rk4_order_bbm,
    check_integrated_conservation,
]


def run_checks(level: str = "quick") -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError(f'level must be "quick" or "full", got {level!r}')
    checks = QUICK_CHECKS if level == "quick" else FULL_CHECKS
    return [c() for c in checks]
