import math

import numpy as np
import pytest

from spapprox.averaging import mu1, mu2, stieltjes_integral
from spapprox.jackson import extremal_function
from spapprox.psi import PsiSequence, power, psi_derivative
from spapprox.quadrature import adaptive_simpson
from spapprox.smoothness import phi_alpha
from spapprox.spectral import SpectralFunction, best_approximation, sp_norm
from spapprox.widths import (
    SmoothnessClass,
    bernstein_radius,
    certify_widths,
    linear_majorant,
    lower_certificate,
    majorant,
    majorant_condition_check,
    membership,
    upper_certificate,
    width_closed_form,
)

TAU34 = 3 * np.pi / 4


def fixed_class(p=2.0, alpha=1.0, weight="mu1", tau=np.pi, r=1, n=2):
    mu = mu1(tau) if weight == "mu1" else mu2(tau)
    return SmoothnessClass(psi=power(r), shape=phi_alpha(alpha), p=p, mu=mu, n=n)


def solved_linear_majorant_class(r=1):
    """Linear majorant on the linear weight: the window-scaling condition
    pins the exponent; solve it from the stationarity identity."""
    tau = TAU34
    g_tau = 2 * (1 - np.cos(tau))  # shape power dilated mass integrand at tau
    mass = adaptive_simpson(lambda t: 2 * (1 - np.cos(t)), 0.0, tau)
    p_star = tau * g_tau / mass - 1.0
    alpha = 2.0 / p_star
    return SmoothnessClass(
        psi=power(r), shape=phi_alpha(alpha), p=p_star, mu=mu2(tau),
        omega=linear_majorant(),
    )


class TestClassValidation:
    def test_exactly_one_mode(self):
        with pytest.raises(ValueError):
            SmoothnessClass(psi=power(1), shape=phi_alpha(1), p=2, mu=mu1(np.pi))
        with pytest.raises(ValueError):
            SmoothnessClass(
                psi=power(1), shape=phi_alpha(1), p=2, mu=mu1(np.pi),
                n=2, omega=linear_majorant(),
            )

    def test_mode_names(self):
        assert fixed_class().mode == "fixed_n"
        assert solved_linear_majorant_class().mode == "majorant"

    def test_non_monotone_multiplier_rejected(self):
        rising = PsiSequence(eval=lambda k: complex(abs(k)), bound=1e9)
        cls = SmoothnessClass(psi=rising, shape=phi_alpha(1), p=2, mu=mu1(np.pi), n=2)
        with pytest.raises(ValueError, match="nonincreasing"):
            width_closed_form(cls, k_max=8)


class TestClosedForm:
    def test_cosine_weight_value(self):
        cls = fixed_class(p=2, alpha=1, r=2, n=3)
        value = width_closed_form(cls, k_max=24)
        assert value.certified
        assert value.value == pytest.approx(math.sqrt(2) / 2 / 9, rel=1e-9)
        assert value.dimensions == (5, 6)
        # cross-check the shape mass by quadrature
        mass_ratio = 2.0 / stieltjes_integral(
            lambda t: 2 * (1 - np.cos(t)), mu1(np.pi), np.pi
        )
        assert value.value == pytest.approx(math.sqrt(mass_ratio) / 9, rel=1e-9)

    def test_linear_weight_value(self):
        cls = fixed_class(p=2, alpha=1, weight="mu2", tau=TAU34, r=1, n=2)
        value = width_closed_form(cls, k_max=24)
        expected = math.sqrt(TAU34 / (2 * (TAU34 - np.sin(TAU34)))) / 2
        assert value.certified
        assert value.value == pytest.approx(expected, rel=1e-9)

    def test_majorant_mode_scales_by_window_bound(self):
        cls_m = solved_linear_majorant_class()
        n = 2
        value_m = width_closed_form(cls_m, n, k_max=24)
        fixed_twin = SmoothnessClass(
            psi=cls_m.psi, shape=cls_m.shape, p=cls_m.p, mu=cls_m.mu, n=n
        )
        value_f = width_closed_form(fixed_twin, n, k_max=24)
        assert value_m.value == pytest.approx(value_f.value * (TAU34 / n), rel=1e-12)

    def test_uncertified_reports_interval(self):
        # fractional shape power on the cosine weight: the dilated infimum
        # dips below the undilated mass (around dilation 31), so only the
        # two-sided interval is claimed
        cls = fixed_class(p=2, alpha=0.5, weight="mu1", tau=np.pi, n=2)
        value = width_closed_form(cls, k_max=80)
        assert not value.certified
        assert value.value is None
        assert value.lower < value.upper
        assert value.shape_certification == "declared"


class TestBernsteinRadius:
    def test_equals_certified_closed_form(self):
        cls = fixed_class(p=2, alpha=1, r=1, n=2)
        assert bernstein_radius(cls) == pytest.approx(
            width_closed_form(cls, k_max=16).value, rel=1e-12
        )

    def test_majorant_radius_scales(self):
        cls_m = solved_linear_majorant_class()
        fixed_twin = SmoothnessClass(
            psi=cls_m.psi, shape=cls_m.shape, p=cls_m.p, mu=cls_m.mu, n=2
        )
        assert bernstein_radius(cls_m, 2) == pytest.approx(
            bernstein_radius(fixed_twin) * (TAU34 / 2), rel=1e-12
        )

    def test_unit_case(self):
        cls = fixed_class(p=2, alpha=1, r=0, n=1)
        assert bernstein_radius(cls) == pytest.approx(math.sqrt(2) / 2, rel=1e-10)


class TestMembership:
    def test_zero_function_always_member(self):
        assert membership(SpectralFunction(), fixed_class())
        assert membership(SpectralFunction(), solved_linear_majorant_class(), tol=1e-6)

    def test_boundary_polynomial_is_member(self):
        cls = fixed_class(n=2)
        rng = np.random.default_rng(71)
        radius = bernstein_radius(cls)
        for _ in range(5):
            ks = np.arange(-2, 3)
            f = SpectralFunction({int(k): complex(*rng.standard_normal(2)) for k in ks})
            f = (radius / sp_norm(f, cls.p)) * f
            assert membership(f, cls, tol=1e-6)

    def test_huge_function_is_not_member(self):
        cls = fixed_class(n=2)
        f = SpectralFunction({1: 1e6, 2: 1e6})
        assert not membership(f, cls)

    def test_scaling_past_the_boundary_expels(self):
        cls = fixed_class(n=2)
        f = extremal_function(2, cls.psi)
        rough = psi_derivative(f, cls.psi)
        from spapprox.averaging import averaged_modulus

        scale = 1.0 / averaged_modulus(rough, cls.p, cls.shape, cls.mu, cls.mu.tau / 2)
        assert membership(scale * f, cls, tol=1e-9)
        assert not membership((1.001 * scale) * f, cls, tol=1e-9)


class TestLowerCertificate:
    def test_no_failures_on_certified_configs(self):
        for n in (1, 2, 4):
            cls = fixed_class(p=2, alpha=1, r=1, n=n)
            ev = lower_certificate(cls, samples=25, seed=101 + n)
            assert ev.failures == 0
            assert ev.samples == 25

    def test_empty_run(self):
        ev = lower_certificate(fixed_class(), samples=0, seed=1)
        assert ev.samples == 0 and ev.failures == 0

    def test_inflated_radius_probe_reports(self):
        # exploratory: an inflated ball should start leaking members
        cls = fixed_class(p=2, alpha=1, r=1, n=2)
        ev = lower_certificate(cls, samples=40, seed=5, radius_scale=1.05)
        assert ev.samples == 40
        assert ev.failures >= 0  # reported, not asserted

    def test_majorant_mode(self):
        cls = solved_linear_majorant_class()
        ev = lower_certificate(cls, n=2, samples=10, seed=3)
        assert ev.failures == 0


class TestUpperCertificate:
    def test_extremal_member_attains_the_width(self):
        cls = fixed_class(p=2, alpha=1, r=1, n=2)
        value = width_closed_form(cls, k_max=16).value
        f = extremal_function(2, cls.psi)
        rough = psi_derivative(f, cls.psi)
        from spapprox.averaging import averaged_modulus

        scale = 1.0 / averaged_modulus(rough, cls.p, cls.shape, cls.mu, cls.mu.tau / 2)
        en = best_approximation(scale * f, cls.p, 2)
        assert en == pytest.approx(value, rel=1e-6)

    def test_low_order_members_have_zero_tail(self):
        cls = fixed_class(n=4)
        f = SpectralFunction({0: 1.0, 1: 1.0, -2: 2.0})
        assert best_approximation(f, cls.p, 4) == 0.0

    def test_random_members_stay_below_closed_form(self):
        cls = fixed_class(p=2, alpha=1, r=1, n=2)
        value = width_closed_form(cls, k_max=16).value
        ev = upper_certificate(cls, samples=25, seed=11)
        assert ev.non_bracketing == 0
        assert ev.max_en <= value + 1e-6

    def test_majorant_mode_stays_below(self):
        cls = solved_linear_majorant_class()
        value = width_closed_form(cls, 2, k_max=16).value
        ev = upper_certificate(cls, n=2, samples=8, seed=13)
        assert ev.max_en <= value + 1e-6


class TestCertify:
    def test_consistent_on_certified_configs(self):
        cls = fixed_class(p=2, alpha=1, r=1, n=2)
        cert = certify_widths(cls, samples=20, seed=19, k_max=16)
        assert cert.verdict == "consistent"
        assert cert.dimensions == (3, 4)
        assert cert.closed_form.certified

    def test_homogeneity_violation_detected(self):
        # inflating the ball radius must surface as lower-certificate failures
        cls = fixed_class(p=2, alpha=1, r=1, n=2)
        ev = lower_certificate(cls, samples=60, seed=23, radius_scale=1.2)
        assert ev.failures > 0


class TestMajorantCondition:
    def test_unit_dilation_is_equality(self):
        check = majorant_condition_check(
            linear_majorant(), phi_alpha(1), 2, mu2(TAU34), xi_grid=np.array([1.0])
        )
        assert check.ok
        assert check.worst_rel_margin == pytest.approx(0.0, abs=1e-12)

    def test_solved_configuration_passes_default_grid(self):
        cls = solved_linear_majorant_class()
        check = majorant_condition_check(cls.omega, cls.shape, cls.p, cls.mu)
        assert check.ok

    def test_linear_majorant_at_p2_reports_failure(self):
        # away from the solved exponent the scaling inequality genuinely fails
        check = majorant_condition_check(linear_majorant(), phi_alpha(1), 2, mu2(TAU34))
        assert not check.ok
        assert check.worst_rel_margin > 0
        assert math.isfinite(check.worst_xi) and math.isfinite(check.worst_u)

    def test_power_majorant_stationary_family_exploratory(self):
        # construct the exponent that balances the dilated mass for a second
        # shape power; exploratory smoke per the certificate design
        tau = TAU34
        ap = 3.0
        g_tau = (2 * (1 - np.cos(tau))) ** (ap / 2)
        mass = adaptive_simpson(lambda t: (2 * (1 - np.cos(t))) ** (ap / 2), 0.0, tau)
        p = 2.0
        beta = (tau * g_tau / mass - 1.0) / p
        omega = majorant(lambda u: np.asarray(u, float) ** beta, label=f"power:{beta:g}")
        check = majorant_condition_check(omega, phi_alpha(ap / p), p, mu2(tau))
        assert check.worst_rel_margin <= 1e-9  # equality at xi=1, below elsewhere
