"""Elementary scalar functions: frozen high-precision values and invariants."""

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cayley_ising import ModelParams, f_theta, f_theta_prime, log_cosh, site_free_energy, site_log_weight

# frozen with 40-digit arithmetic (mpmath), rounded to double
TANH_1 = 0.7615941559557649
ATANH_HALF = 0.5493061443340548
F_1_06 = 0.4934577532067754  # arctanh(0.6 tanh 1)
A0_B1_J1 = -1.1269280110429725  # -ln(2 cosh 1)
D0_B1_J1_FIELD1 = 1.3556485542388775  # (1/2) ln(4 cosh 2)


class TestModelParams:
    def test_theta_zero_coupling(self):
        assert ModelParams(2, 0.0, 0.0, 1.0).theta == 0.0

    def test_theta_unit_coupling(self):
        assert ModelParams(2, 1.0, 0.0, 1.0).theta == pytest.approx(TANH_1, abs=1e-15)

    def test_theta_odd_in_coupling(self):
        assert ModelParams(2, -1.0, 0.0, 1.0).theta == -ModelParams(2, 1.0, 0.0, 1.0).theta

    def test_rejects_bad_k(self):
        with pytest.raises(ValueError):
            ModelParams(1, 1.0, 0.0, 1.0)

    def test_rejects_nonpositive_beta(self):
        for beta in (0.0, -1.0, math.inf, math.nan):
            with pytest.raises(ValueError):
                ModelParams(2, 1.0, 0.0, beta)


class TestFTheta:
    def test_zero_field_fixed(self):
        for theta in (-0.9, -0.3, 0.0, 0.5, 0.99):
            assert f_theta(0.0, theta) == 0.0

    def test_frozen_value(self):
        assert f_theta(1.0, 0.6) == pytest.approx(F_1_06, abs=1e-15)

    def test_saturation(self):
        # tanh(50) rounds to 1, so the kernel saturates at arctanh(theta)
        assert f_theta(50.0, 0.5) == pytest.approx(ATANH_HALF, abs=1e-12)

    def test_rejects_theta_outside_open_interval(self):
        for theta in (1.0, -1.0, 1.5):
            with pytest.raises(ValueError):
                f_theta(0.3, theta)

    @given(
        h=st.floats(-80.0, 80.0),
        theta=st.floats(-0.995, 0.995),
    )
    @settings(max_examples=300)
    def test_bounded_by_arctanh_theta(self, h, theta):
        assert abs(f_theta(h, theta)) <= math.atanh(abs(theta)) + 1e-12

    @given(h=st.floats(-30.0, 30.0), theta=st.floats(0.05, 0.99))
    @settings(max_examples=300)
    def test_odd_and_increasing(self, h, theta):
        assert f_theta(-h, theta) == pytest.approx(-f_theta(h, theta), abs=1e-14)
        eps = 1e-4
        assert f_theta(h + eps, theta) > f_theta(h, theta) - 1e-15

    def test_derivative_matches_finite_difference(self):
        for h in (-2.0, -0.3, 0.0, 0.7, 3.0):
            for theta in (-0.8, 0.25, 0.9):
                eps = 1e-6
                fd = (f_theta(h + eps, theta) - f_theta(h - eps, theta)) / (2 * eps)
                assert f_theta_prime(h, theta) == pytest.approx(fd, abs=1e-8)


class TestSiteTerms:
    def test_a_frozen_value(self):
        p = ModelParams(2, 1.0, 0.0, 1.0)
        assert site_free_energy(0.0, p) == pytest.approx(A0_B1_J1, abs=1e-15)

    def test_a_zero_coupling_factorises(self):
        # J = 0: a(t) = -(1/beta) ln(2 cosh t) at any t
        for t in (0.0, 0.4, 2.0, -1.3):
            for beta in (0.5, 1.0, 3.0):
                p = ModelParams(2, 0.0, 0.0, beta)
                expected = -(math.log(2.0) + log_cosh(t)) / beta
                assert site_free_energy(t, p) == pytest.approx(expected, abs=1e-14)

    @given(t=st.floats(-50.0, 50.0), beta=st.floats(0.1, 5.0), J=st.floats(-3.0, 3.0))
    @settings(max_examples=200)
    def test_a_even_in_t_and_J(self, t, beta, J):
        p = ModelParams(2, J, 0.0, beta)
        pm = ModelParams(2, -J, 0.0, beta)
        a = site_free_energy(t, p)
        assert site_free_energy(-t, p) == pytest.approx(a, abs=1e-12)
        assert site_free_energy(t, pm) == pytest.approx(a, abs=1e-12)

    def test_d_reduces_to_minus_a_at_zero_field(self):
        p = ModelParams(2, 1.0, 0.0, 1.0)
        for t in (0.0, 0.5, 2.0, 100.0):
            assert site_log_weight(t, p) + site_free_energy(t, p) == pytest.approx(0.0, abs=1e-12)

    def test_d_frozen_values(self):
        assert site_log_weight(0.0, ModelParams(2, 0.0, 1.0, 1.0)) == pytest.approx(
            -A0_B1_J1, abs=1e-15
        )
        # (1/2) ln(4 cosh 2 cosh 0)
        assert site_log_weight(0.0, ModelParams(2, 1.0, 1.0, 1.0)) == pytest.approx(
            D0_B1_J1_FIELD1, abs=1e-15
        )

    def test_log_domain_large_fields(self):
        # -a(t) ~ |t|/beta for large |t|; both probes agree with the asymptote
        p = ModelParams(2, 1.0, 0.0, 1.0)
        for t in (100.0, 1000.0):
            val = site_free_energy(t, p)
            assert math.isfinite(val)
            assert val + t == pytest.approx(0.0, abs=1e-9)

    def test_log_cosh_matches_direct_in_safe_range(self):
        for x in (-5.0, -0.1, 0.0, 0.3, 8.0):
            assert log_cosh(x) == pytest.approx(math.log(math.cosh(x)), abs=1e-13)
