import numpy as np
import pytest

from fracwave import exact, verify
from fracwave.errors import BlowUpError, ConfigError
from fracwave.grid import Domain, SpectralField
from fracwave.integrate import IntegrationConfig, integrate, rk4_step
from fracwave.model import ModelParams

from conftest import make_field


class TestConfig:
    def test_auto_dt_policy(self):
        d = Domain.periodic(0.0, 50.0, 100)
        cfg = IntegrationConfig(t_end=1.0, dt="auto")
        dt, n, every = cfg.resolve(d)
        k_max = 2 * np.pi * 100 / 50.0
        assert n == int(np.ceil(1.0 / (0.001 / k_max)))
        assert dt * n == pytest.approx(1.0, rel=1e-15)
        assert dt <= 0.001 / k_max + 1e-18
        assert every == max(1, round(0.01 * n))

    def test_explicit_dt_shrinks_to_divide(self):
        d = Domain.periodic(0.0, 50.0, 16)
        dt, n, _ = IntegrationConfig(t_end=1.0, dt=0.3).resolve(d)
        assert n == 4
        assert dt == pytest.approx(0.25)

    @pytest.mark.parametrize("kw", [
        dict(t_end=0.0), dict(t_end=-1.0), dict(t_end=1.0, dt=0.0),
        dict(t_end=1.0, dt=2.0), dict(t_end=1.0, dt="fast"),
        dict(t_end=1.0, dt=0.1, sample_every=0),
    ])
    def test_rejects_bad_config(self, kw):
        with pytest.raises(ConfigError):
            IntegrationConfig(**kw)

    def test_step_count_guard(self):
        d = Domain.periodic(0.0, 50.0, 16)
        with pytest.raises(ConfigError):
            IntegrationConfig(t_end=1.0, dt=1e-10).resolve(d)


class TestRk4Step:
    def test_zero_field_stays_zero(self, wide_domain):
        U = SpectralField.zeros(wide_domain)
        out = rk4_step(U, 0.1, ModelParams.camassa_holm())
        assert np.all(out.coeffs == 0)

    def test_local_error_against_propagator(self):
        # single linear mode: one step must match exp(-i w dt) with the exact
        # RK4 stability-function defect, giving a fifth-order local slope
        d = Domain.periodic(-np.pi, 2 * np.pi, 8)
        p = ModelParams(4.0, 1.0 / 3.0, 0.0, 1.0)
        k, amp = 3, 1e-7
        U = SpectralField.from_modes(d, {k: amp, -k: amp})
        om = p.kappa1 * d.wavenumber(k) / (1.0 + abs(d.wavenumber(k)) ** p.alpha)
        errs, expected = [], []
        for dt in (1e-2, 5e-3, 2.5e-3):
            z = -1j * om * dt
            R = 1 + z + z**2 / 2 + z**3 / 6 + z**4 / 24
            expected.append(abs(np.exp(z) - R) * amp)
            out = rk4_step(U, dt, p)
            errs.append(abs(out.coeff(k) - amp * np.exp(z)))
        for e, x in zip(errs, expected):
            assert e == pytest.approx(x, rel=0.02)
        slopes = [np.log2(errs[i] / errs[i + 1]) for i in range(2)]
        for s in slopes:
            assert s == pytest.approx(5.0, abs=0.2)

    def test_small_dt_consistency_with_rhs(self, wide_domain, rng):
        from fracwave.model import rhs

        U = make_field(wide_domain, rng, decay=2.0)
        p = ModelParams.camassa_holm()
        r = rhs(U, p).coeffs
        defects = []
        for dt in (1e-4, 5e-5):
            fd = (rk4_step(U, dt, p).coeffs - U.coeffs) / dt
            defects.append(np.max(np.abs(fd - r)))
        # (rk4(U,dt) - U)/dt - rhs(U) = O(dt)
        assert defects[1] == pytest.approx(defects[0] / 2.0, rel=0.05)

    def test_rejects_nonpositive_dt(self, wide_domain, rng):
        with pytest.raises(ConfigError):
            rk4_step(make_field(wide_domain, rng), 0.0, ModelParams.camassa_holm())


class TestIntegrate:
    def test_single_step_equals_rk4(self, wide_domain, rng):
        U = make_field(wide_domain, rng, decay=2.0)
        p = ModelParams.fbbm(2.0)
        direct = rk4_step(U, 0.25, p)
        via_integrate, diag = integrate(U, IntegrationConfig(t_end=0.25, dt=0.25), p)
        assert np.array_equal(direct.coeffs, via_integrate.coeffs)
        assert diag.times[0] == 0.0 and diag.times[-1] == 0.25

    def test_constant_is_steady(self, wide_domain):
        U = SpectralField.from_modes(wide_domain, {0: 1.5})
        out, diag = integrate(U, IntegrationConfig(t_end=2.0, dt=0.01), ModelParams.camassa_holm())
        assert np.max(np.abs(diag.mass - diag.mass[0])) == 0.0
        assert np.max(np.abs(diag.energy - diag.energy[0])) <= 1e-14 * diag.energy[0]
        assert abs(out.coeff(0) - 1.5) <= 1e-13

    def test_peakon_conservation_auto_dt(self):
        res = verify.check_integrated_conservation()
        assert res.passed, res.detail

    def test_determinism(self, wide_domain, rng):
        U = make_field(wide_domain, rng, decay=2.0)
        p = ModelParams.camassa_holm()
        cfg = IntegrationConfig(t_end=0.5, dt=1e-3)
        a, _ = integrate(U, cfg, p)
        b, _ = integrate(U, cfg, p)
        assert np.array_equal(a.coeffs, b.coeffs)

    def test_diagnostics_time_grid(self):
        d = Domain.periodic(0.0, 50.0, 64)
        U = exact.peakon_field(d, 1.0, 25.0)
        _, diag = integrate(U, IntegrationConfig(t_end=1.0, dt=1e-3, sample_every=100),
                            ModelParams.camassa_holm())
        assert diag.times[0] == 0.0
        assert diag.times[-1] == 1.0
        assert np.all(np.diff(diag.times) > 0)
        assert len(diag) == 11

    def test_blowup_reports_time(self):
        # a CFL-violating step size on the peakon blows up within a few steps
        d = Domain.periodic(0.0, 50.0, 256)
        U = exact.peakon_field(d, 1.0, 25.0)
        with pytest.raises(BlowUpError) as err:
            integrate(U, IntegrationConfig(t_end=10.0, dt=0.5, sample_every=1),
                      ModelParams.camassa_holm())
        assert err.value.time is not None
        assert 0.0 <= err.value.time <= 10.0

    def test_spectral_filter_toggle(self, wide_domain, rng):
        U = make_field(wide_domain, rng, decay=2.0)
        p = ModelParams.camassa_holm()
        cfg = IntegrationConfig(t_end=0.01, dt=0.01)  # single step: filter is diagonal
        plain, _ = integrate(U, cfg, p)
        filtered, _ = integrate(U, cfg, p, spectral_filter=True)
        N = wide_domain.N
        assert filtered.coeff(1) == plain.coeff(1)  # exp(-36 (1/N)^36) rounds to 1
        assert abs(filtered.coeff(N)) <= 1e-15 * abs(plain.coeff(N))  # exp(-36) damped

    def test_global_temporal_order(self):
        res = verify.check_rk4_order_linear()
        assert res.passed, res.detail
