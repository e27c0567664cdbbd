"""Closed-form free energies, mixing weights, partial averages, residual entropy."""

import math

import numpy as np
import pytest

from cayley_ising import (
    AltParams,
    Label,
    ModelParams,
    Rooting,
    TreeSpec,
    label_counts,
    alt_weights,
    alternating_family,
    alternating_free_energy,
    build_alternating,
    build_periodic,
    build_translation_invariant,
    free_boundary_family,
    label_recurrence_roots,
    periodic_free_energy,
    residual_entropy_estimate,
    site_average,
    site_free_energy,
    solve_alternating,
    solve_ti,
    ti_free_energy,
    ti_positive_family,
    zero_label_fraction,
)

SQRT2 = math.sqrt(2.0)


def _valid_tuples(k_max):
    for k in range(2, k_max + 1):
        for q in range(1, k):
            for r in range(0, k + 1):
                if (k - r) % 2 == 0:
                    yield k, q, r


class TestRecurrenceRoots:
    def test_k2_q1_r2(self):
        lam = label_recurrence_roots(2, 1, 2)
        assert lam[0] == 2.0
        assert lam[1] == pytest.approx(SQRT2, abs=1e-15)
        assert lam[2] == pytest.approx(-SQRT2, abs=1e-15)
        assert zero_label_fraction(2, 1, 2) == pytest.approx(1.0, abs=1e-15)

    def test_k3_q1_r1(self):
        lam = label_recurrence_roots(3, 1, 1)
        assert lam[1] == pytest.approx(-1 + SQRT2, abs=1e-15)
        assert lam[2] == pytest.approx(-1 - SQRT2, abs=1e-15)
        assert zero_label_fraction(3, 1, 1) == pytest.approx(3.0 / 7.0, abs=1e-15)

    def test_roots_satisfy_cubic(self):
        rng = np.random.default_rng(11)
        tuples = list(_valid_tuples(6))
        for idx in rng.choice(len(tuples), size=10, replace=False):
            k, q, r = tuples[idx]
            for lam in label_recurrence_roots(k, q, r):
                value = lam**3 - r * lam**2 - (k * k - r * k + r * q) * lam + r * k * q
                assert abs(value) <= 1e-10 * max(1.0, k**3)

    def test_leading_root_is_k(self):
        for k, q, r in _valid_tuples(5):
            assert label_recurrence_roots(k, q, r)[0] == float(k)


class TestAltWeights:
    def test_weight_sums_are_one(self):
        for k, q, r in _valid_tuples(6):
            for root in (Label.ZERO, Label.PLUS_H1, Label.PLUS_H2):
                for triple in alt_weights(k, q, r, root):
                    assert math.fsum(triple) == pytest.approx(1.0, abs=1e-12)

    def test_r_nonzero_is_root_independent(self):
        for root in (Label.ZERO, Label.PLUS_H1, Label.MINUS_H2):
            assert alt_weights(3, 1, 1, root) == alt_weights(3, 1, 1, Label.ZERO)

    def test_k2_q1_r0_displayed_coefficients(self):
        (even, odd) = alt_weights(2, 1, 0, Label.ZERO)
        assert even == pytest.approx((1 / 3, 1 / 3, 1 / 3), abs=1e-15)
        assert odd == pytest.approx((1 / 6, 2 / 3, 1 / 6), abs=1e-15)

    def test_root_h1_swaps_parities(self):
        even0, odd0 = alt_weights(4, 3, 0, Label.ZERO)
        even1, odd1 = alt_weights(4, 3, 0, Label.PLUS_H1)
        assert even1 == odd0
        assert odd1 == even0

    def test_root_h2_matches_root_zero(self):
        assert alt_weights(2, 1, 0, Label.PLUS_H2) == alt_weights(2, 1, 0, Label.ZERO)


class TestCountAsymptotics:
    """Cumulative label counts against their closed forms and the k^n mode."""

    @staticmethod
    def _cumulative(alt, k, n):
        A = B = C = 0
        for m in range(n + 1):
            a, b, g, d, x = label_counts(alt, k, m)
            A += a
            B += b + g
            C += d + x
        return A, B, C

    @pytest.mark.parametrize("k,q,root", [(2, 1, Label.ZERO), (4, 3, Label.PLUS_H1), (4, 2, Label.PLUS_H2)])
    def test_r0_cumulative_closed_forms(self, k, q, root):
        # seeds: alpha_0 and v_0 from the root indicator, (w_0, w_1) the
        # first two pair-sphere counts
        alt = AltParams(q, 0, root)
        a0, b0, g0, d0, x0 = label_counts(alt, k, 0)
        _, b1, g1, *_ = label_counts(alt, k, 1)
        w0, w1, v0 = b0 + g0, b1 + g1, d0 + x0
        for m in range(1, 6):
            A_even, B_even, C_even = self._cumulative(alt, k, 2 * m)
            assert A_even == a0 + (k - q) * (w0 + w1) * (k ** (2 * m) - 1) // (k * k - 1)
            assert B_even == (w0 * (k ** (2 * m + 2) - 1) + w1 * (k ** (2 * m) - 1)) // (k * k - 1)
            assert C_even == v0 + q * (w0 + w1) * (k ** (2 * m) - 1) // (k * k - 1)
            A_odd, B_odd, C_odd = self._cumulative(alt, k, 2 * m + 1)
            assert A_odd == A_even + (k - q) * k ** (2 * m) * w0
            assert B_odd == B_even + k ** (2 * m) * w1
            assert C_odd == C_even + q * k ** (2 * m) * w0

    @pytest.mark.parametrize("root", [Label.ZERO, Label.PLUS_H1, Label.PLUS_H2])
    def test_r_nonzero_zero_fraction_root_independent(self, root):
        # A_n / |V_n| converges to the same zero-label fraction from every
        # root class
        k, q, r, n = 3, 1, 1, 16
        alt = AltParams(q, r, root)
        A_n, _, _ = self._cumulative(alt, k, n)
        volume = (k ** (n + 1) - 1) // (k - 1)
        assert A_n / volume == pytest.approx(zero_label_fraction(k, q, r), abs=2e-2)


class TestAlternatingFreeEnergy:
    def test_zero_solution_gives_a0_everywhere(self):
        for k, q, r in _valid_tuples(5):
            result = alternating_free_energy(k, q, r, 0.0, 0.0, 1.1, 1.0)
            a0 = site_free_energy(0.0, ModelParams(k, 1.0, 0.0, 1.1))
            for v in result.values:
                assert v == pytest.approx(a0, abs=1e-12)

    def test_r_equals_k_collapses_to_a0(self):
        result = alternating_free_energy(2, 1, 2, 0.9, 1.7, 1.0, 1.0)
        assert result.kind == "limit"
        a0 = site_free_energy(0.0, ModelParams(2, 1.0, 0.0, 1.0))
        assert result.value == pytest.approx(a0, abs=1e-14)

    def test_kind_by_r(self):
        assert alternating_free_energy(3, 1, 1, 0.5, 1.0, 1.0, 1.0).kind == "limit"
        assert alternating_free_energy(2, 1, 0, 0.5, 1.0, 1.0, 1.0).kind == "accumulation"

    def test_accumulation_swap_between_root_classes(self):
        h1, h2 = solve_alternating(2, 1, math.tanh(1.2)).branch("plus").fields
        base = alternating_free_energy(2, 1, 0, h1, h2, 1.2, 1.0, Label.ZERO)
        swapped = alternating_free_energy(2, 1, 0, h1, h2, 1.2, 1.0, Label.PLUS_H1)
        assert swapped.even == pytest.approx(base.odd, abs=1e-15)
        assert swapped.odd == pytest.approx(base.even, abs=1e-15)

    def test_limit_accessor_guards(self):
        acc = alternating_free_energy(2, 1, 0, 0.3, 0.6, 1.0, 1.0)
        with pytest.raises(ValueError):
            _ = acc.value
        assert acc.mean == pytest.approx(0.5 * (acc.even + acc.odd), abs=1e-16)


class TestTIAndPeriodic:
    def test_ti_zero_field_value(self):
        params = ModelParams(2, 1.0, 0.0, 1.0)
        assert ti_free_energy(0.0, params).value == pytest.approx(-1.1269280110429725, abs=1e-14)

    def test_ti_joint_sign_flip(self):
        p_plus = ModelParams(2, 1.0, 0.4, 1.3)
        p_minus = ModelParams(2, 1.0, -0.4, 1.3)
        for h in (0.0, 0.8, -1.5):
            assert ti_free_energy(h, p_plus).value == pytest.approx(
                ti_free_energy(-h, p_minus).value, abs=1e-13
            )

    def test_ti_even_at_zero_field(self):
        params = ModelParams(2, 1.0, 0.0, 1.0)
        h = solve_ti(params).branch("h_max").fields[0]
        assert ti_free_energy(h, params).value == pytest.approx(
            ti_free_energy(-h, params).value, abs=1e-14
        )

    def test_periodic_degenerate_pair(self):
        params = ModelParams(3, 0.9, 0.2, 1.1)
        acc = periodic_free_energy(0.7, 0.7, params)
        ti = ti_free_energy(0.7, params).value
        assert acc.even == pytest.approx(ti, abs=1e-14)
        assert acc.odd == pytest.approx(ti, abs=1e-14)

    def test_periodic_swap_property(self):
        params = ModelParams(2, -1.0, 0.3, 1.0)
        a = periodic_free_energy(0.4, -1.1, params)
        b = periodic_free_energy(-1.1, 0.4, params)
        assert a.even == pytest.approx(b.odd, abs=1e-15)
        assert a.odd == pytest.approx(b.even, abs=1e-15)

    def test_periodic_weight_sum(self):
        # coefficients k/(k+1) and 1/(k+1) of both accumulation lines
        for k in range(2, 7):
            assert k / (k + 1) + 1 / (k + 1) == pytest.approx(1.0, abs=1e-15)

    def test_antiferro_pair_components_coincide_at_zero_field(self):
        params = ModelParams(2, -1.0, 0.0, 1.0)
        acc = periodic_free_energy(-1.3, 1.3, params)
        assert acc.even == pytest.approx(acc.odd, abs=1e-13)


class TestSiteAverage:
    def test_constant_assignment_is_exact(self):
        params = ModelParams(2, 1.0, 0.0, 1.0)
        asg = build_translation_invariant(TreeSpec(2, Rooting.HALF, 9), 0.8)
        expected = site_free_energy(0.8, params)
        for n in (0, 3, 9):
            assert site_average(asg, params, n) == pytest.approx(expected, abs=1e-14)

    def test_in_field_uses_log_weight(self):
        params = ModelParams(2, 1.0, 0.3, 1.0)
        asg = build_translation_invariant(TreeSpec(2, Rooting.HALF, 4), 0.5)
        from cayley_ising import site_log_weight

        assert site_average(asg, params, 4) == pytest.approx(
            -site_log_weight(0.5, params), abs=1e-14
        )

    def test_alternating_r0_parity_subsequences(self):
        beta = 1.2
        h1, h2 = solve_alternating(2, 1, math.tanh(beta)).branch("plus").fields
        acc = alternating_free_energy(2, 1, 0, h1, h2, beta, 1.0)
        params = ModelParams(2, 1.0, 0.0, beta)
        asg = build_alternating(TreeSpec(2, Rooting.HALF, 18), AltParams(1, 0), h1, h2)
        gaps_even = [abs(site_average(asg, params, n) - acc.even) for n in (14, 16, 18)]
        gaps_odd = [abs(site_average(asg, params, n) - acc.odd) for n in (13, 15, 17)]
        assert gaps_even[0] > gaps_even[1] > gaps_even[2]
        assert gaps_odd[0] > gaps_odd[1] > gaps_odd[2]
        assert gaps_even[2] < 1e-4 and gaps_odd[2] < 1e-4
        # geometric rate ~ k^{-2} per parity step
        assert gaps_even[1] / gaps_even[0] == pytest.approx(0.25, abs=0.05)

    def test_alternating_r_nonzero_single_limit(self):
        beta = 1.5
        h1, h2 = solve_alternating(3, 1, math.tanh(beta)).branch("plus").fields
        limit = alternating_free_energy(3, 1, 1, h1, h2, beta, 1.0).value
        params = ModelParams(3, 1.0, 0.0, beta)
        asg = build_alternating(TreeSpec(3, Rooting.HALF, 14), AltParams(1, 1), h1, h2)
        gaps = [abs(site_average(asg, params, n) - limit) for n in (10, 12, 14)]
        assert gaps[0] > gaps[1] > gaps[2]
        # decay rate per two levels is (|lam_sub| / k)^2 with lam_sub = 1 + sqrt(2)
        rho2 = ((1 + SQRT2) / 3) ** 2
        assert gaps[1] / gaps[0] == pytest.approx(rho2, abs=0.05)

    def test_periodic_average_matches_parity_weights(self):
        params = ModelParams(2, -1.0, 0.0, 1.0)
        asg = build_periodic(TreeSpec(2, Rooting.FULL, 16), -1.2, 1.2)
        acc = periodic_free_energy(-1.2, 1.2, params)
        assert site_average(asg, params, 16) == pytest.approx(acc.even, abs=1e-4)
        assert site_average(asg, params, 15) == pytest.approx(acc.odd, abs=1e-4)


class TestResidualEntropy:
    BETAS = (5.0, 10.0, 20.0, 40.0)

    def test_free_boundary_closed_form(self):
        # beta (F - F_inf) = -ln(1 + e^{-2 beta}) for k = 2, J = 1
        ests = residual_entropy_estimate(free_boundary_family(2, 1.0), self.BETAS)
        assert abs(ests[0]) <= 5e-5
        assert abs(ests[0] + math.log1p(math.exp(-10.0))) <= 1e-12
        assert abs(ests[-1]) <= 1e-10

    def test_alternating_mean_decays(self):
        ests = residual_entropy_estimate(
            alternating_family(2, 1, 0, 1.0, component="mean"), self.BETAS
        )
        mags = [abs(e) for e in ests]
        assert mags[-1] <= 1e-3
        for a, b in zip(mags, mags[1:]):
            assert b <= a + 1e-12

    def test_alternating_parity_components_keep_entropy(self):
        # each accumulation point alone retains a (k-1) ln2 / (2(k+1)) slope;
        # only the parity average is entropy free
        even = residual_entropy_estimate(
            alternating_family(2, 1, 0, 1.0, component="even"), self.BETAS
        )
        odd = residual_entropy_estimate(
            alternating_family(2, 1, 0, 1.0, component="odd"), self.BETAS
        )
        assert even[-1] == pytest.approx(math.log(2.0) / 6.0, abs=1e-6)
        assert odd[-1] == pytest.approx(-math.log(2.0) / 6.0, abs=1e-6)

    def test_ti_branch_decays(self):
        ests = residual_entropy_estimate(ti_positive_family(2, 1.0), self.BETAS)
        mags = [abs(e) for e in ests]
        assert mags[-1] <= 1e-3
        for a, b in zip(mags, mags[1:]):
            assert b <= a + 1e-12

    def test_r_nonzero_family_is_entropy_free(self):
        ests = residual_entropy_estimate(
            alternating_family(4, 1, 2, 1.0, component="mean"), self.BETAS
        )
        assert abs(ests[-1]) <= 1e-3

    def test_rejects_non_increasing_betas(self):
        with pytest.raises(ValueError):
            residual_entropy_estimate(free_boundary_family(2, 1.0), (5.0, 5.0))
