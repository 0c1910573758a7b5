import numpy as np
import pytest
from scipy.integrate import quad

from fracwave import exact
from fracwave.exact import ProfileError
from fracwave.grid import Domain


@pytest.fixture(scope="module")
def profile():
    return exact.ch_smooth_profile(3.0)


class TestSmoothProfile:
    def test_period_matches_reported_value(self, profile):
        assert profile.period == pytest.approx(6.4695, abs=1e-3)

    def test_period_matches_quadrature_oracle(self, profile):
        # the orbit conserves E = phi'^2/2 + V(phi), V = -phi^2/2 - 3/(phi-c),
        # with E=1 and turning points 1, 2; the period is an explicit integral
        c, E = 3.0, 1.0

        def integrand(th):
            phi = 1.5 + 0.5 * np.sin(th)
            v = -phi * phi / 2.0 - 3.0 / (phi - c)
            return np.cos(th) / np.sqrt(2.0 * (E - v))

        a_quad, _ = quad(integrand, -np.pi / 2, np.pi / 2, epsabs=1e-13, epsrel=1e-13)
        assert profile.period == pytest.approx(a_quad, abs=1e-9)

    def test_initial_conditions_at_both_ends(self, profile):
        assert profile.values[0] == pytest.approx(1.0, abs=1e-12)
        assert profile.values[-1] == pytest.approx(1.0, abs=1e-9)
        h = profile.xi_grid[1] - profile.xi_grid[0]
        dphi0 = (profile.values[1] - profile.values[0]) / h
        dphi0 -= 0.5 * h * (profile.values[0] - 3.0 / (profile.values[0] - 3.0) ** 2)
        assert abs(dphi0) <= 1e-6  # phi'(0) = 0 after removing the O(h) Taylor term

    def test_ode_residual_finite_differences(self, profile):
        v = profile.values
        h = profile.xi_grid[1] - profile.xi_grid[0]
        second = (v[2:] - 2 * v[1:-1] + v[:-2]) / h**2
        resid = second - (v[1:-1] - 3.0 / (v[1:-1] - 3.0) ** 2)
        assert np.max(np.abs(resid)) <= 1e-6

    def test_max_at_interior(self, profile):
        i = int(np.argmax(profile.values))
        assert 0 < i < profile.values.size - 1
        assert profile.values[i] == pytest.approx(2.0, abs=1e-9)  # upper turning point

    def test_interpolation_consistency_under_shift(self, profile):
        xs = np.linspace(0.0, profile.period, 257)
        for s in (0.37, 3.2, -1.7):
            direct = profile.evaluate(xs - s)
            wrapped = profile.evaluate(np.mod(xs - s, profile.period))
            assert np.max(np.abs(direct - wrapped)) <= 1e-12

    def test_tiling_is_continuous(self, profile):
        a = profile.period
        eps = 1e-10
        left = profile.evaluate(np.mod(a - eps, a))
        right = profile.evaluate(np.mod(a + eps, a))
        assert abs(left - right) <= 1e-8

    def test_requires_supercritical_speed(self):
        with pytest.raises(ValueError):
            exact.ch_smooth_profile(1.0)

    def test_unbounded_orbit_raises(self):
        # c = 1.5 starts at a local maximum of the potential well and escapes
        with pytest.raises(ProfileError):
            exact.ch_smooth_profile(1.5)

    def test_csv_export(self, profile, tmp_path):
        path = tmp_path / "profile.csv"
        profile.write_csv(path)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == "xi,value"
        assert len(lines) == profile.values.size + 1


class TestPeakon:
    def test_initial_peak_value(self):
        assert exact.peakon(25.0, 0.0, 1.0, 25.0, 50.0) == pytest.approx(1.0)

    def test_rigid_transport(self):
        x = np.linspace(0.0, 50.0, 2001)
        u = exact.peakon(x, 10.0, 1.0, 25.0, 50.0)
        assert x[np.argmax(u)] == pytest.approx(35.0, abs=0.05)

    def test_exponential_decay_rate(self):
        u0 = exact.peakon(25.0, 0.0, 1.0, 25.0, 50.0)
        u1 = exact.peakon(26.0, 0.0, 1.0, 25.0, 50.0)
        u2 = exact.peakon(27.0, 0.0, 1.0, 25.0, 50.0)
        assert u1 / u0 == pytest.approx(np.exp(-1.0), rel=1e-12)
        assert u2 / u1 == pytest.approx(np.exp(-1.0), rel=1e-12)


class TestPeriodizedPeakon:
    def test_peak_value_on_grid(self):
        x = np.linspace(-15.0, 15.0, 60000, endpoint=False)
        u = exact.periodized_peakon(x, 2.0, -5.0, 30.0)
        assert np.max(u) == pytest.approx(2.0, abs=1e-12)

    def test_even_symmetry(self):
        for d in (0.3, 2.2, 9.9):
            a = exact.periodized_peakon(-5.0 + d, 2.0, -5.0, 30.0)
            b = exact.periodized_peakon(-5.0 - d, 2.0, -5.0, 30.0)
            assert a == pytest.approx(b, rel=1e-14)

    def test_two_peakon_sum_max(self):
        x = np.linspace(-15.0, 15.0, 60000, endpoint=False)
        u = exact.periodized_peakon(x, 2.0, -5.0, 30.0) + exact.periodized_peakon(x, 1.0, 5.0, 30.0)
        assert np.max(u) == pytest.approx(2.0, abs=2e-2)
        assert abs(x[np.argmax(u)] - (-5.0)) < 0.05

    def test_limits_to_line_peakon(self):
        # cosh form tends to c*exp(-d) for large L
        assert exact.periodized_peakon(0.0, 2.0, -5.0, 30.0) == pytest.approx(
            2.0 * np.exp(-5.0), rel=1e-4
        )

    def test_rejects_bad_length(self):
        with pytest.raises(ValueError):
            exact.periodized_peakon(0.0, 1.0, 0.0, -1.0)


class TestBbmSolitary:
    def test_amplitude(self):
        assert exact.bbm_solitary(-60.0, 0.0, 2.0, -60.0) == pytest.approx(3.0)

    def test_peak_position_at_t50(self):
        x = np.linspace(-100.0, 100.0, 4001)
        u = exact.bbm_solitary(x, 50.0, 2.0, -60.0)
        assert x[np.argmax(u)] == pytest.approx(40.0, abs=0.1)

    def test_half_amplitude_width(self):
        beta = 0.5 * np.sqrt(0.5)
        w = np.arccosh(np.sqrt(2.0)) / beta  # sech^2 = 1/2 there
        assert exact.bbm_solitary(-60.0 + w, 0.0, 2.0, -60.0) == pytest.approx(1.5, rel=1e-12)

    def test_boundary_tails_negligible(self):
        # 3*sech^2(14.14) ~ 6.3e-12 at the left boundary at t=0
        assert exact.bbm_solitary(-100.0, 0.0, 2.0, -60.0) <= 1e-10
        assert exact.bbm_solitary(100.0, 50.0, 2.0, -60.0) <= 1e-10

    def test_rejects_subcritical_speed(self):
        with pytest.raises(ValueError):
            exact.bbm_solitary(0.0, 0.0, 1.0, 0.0)


class TestCoefficientBuilders:
    """Closed-form projections agree with fine-grid quadrature to alias level."""

    def _quadrature_half(self, domain, fn, M=65536):
        x = domain.x_left + domain.length * np.arange(M) / M
        c = np.fft.rfft(fn(x))[: domain.N + 1] / M
        return c * np.exp(-1j * domain.wavenumber(np.arange(domain.N + 1)) * domain.x_left)

    def test_peakon_field(self):
        d = Domain.periodic(0.0, 50.0, 64)
        f = exact.peakon_field(d, 1.0, 25.0)
        ref = self._quadrature_half(d, lambda x: exact.peakon(x, 0.0, 1.0, 25.0, 50.0))
        assert np.max(np.abs(f.coeffs[d.N:] - ref)) <= 5e-9  # corner => O(M^-2) alias

    def test_periodized_peakon_field(self):
        d = Domain.periodic(-15.0, 30.0, 64)
        f = exact.periodized_peakon_field(d, [2.0, 1.0], [-5.0, 5.0])
        ref = self._quadrature_half(
            d,
            lambda x: exact.periodized_peakon(x, 2.0, -5.0, 30.0)
            + exact.periodized_peakon(x, 1.0, 5.0, 30.0),
        )
        assert np.max(np.abs(f.coeffs[d.N:] - ref)) <= 5e-9

    def test_bbm_field(self):
        d = Domain.periodic(-100.0, 200.0, 64)
        f = exact.bbm_field(d, 2.0, -60.0)
        ref = self._quadrature_half(d, lambda x: exact.bbm_solitary(x, 0.0, 2.0, -60.0))
        assert np.max(np.abs(f.coeffs[d.N:] - ref)) <= 1e-11  # analytic: image tails only

    def test_profile_field(self, profile):
        a = profile.period
        d = Domain.periodic(0.0, 10 * a, 64)
        f = exact.profile_field(d, profile, 10)
        ref = self._quadrature_half(d, lambda x: profile.evaluate(x))
        assert np.max(np.abs(f.coeffs[d.N:] - ref)) <= 1e-12
        # only every tenth mode is populated
        k = np.arange(-d.N, d.N + 1)
        assert np.all(f.coeffs[(k % 10) != 0] == 0)

    def test_profile_field_validates_geometry(self, profile):
        d = Domain.periodic(0.0, 10 * profile.period + 1.0, 64)
        with pytest.raises(ValueError):
            exact.profile_field(d, profile, 10)
