import math

import numpy as np
import pytest

from zenga.asymptotics import (asymptotic_variance, confidence_interval,
                               corrected_variance_batch, delta_variance, score_set,
                               sigma_matrix, variances)
from zenga.distribution import CountVector, DiscreteDistribution, ValidationError
from zenga.influence import influence_profile
from zenga.normal import norm_ppf

from conftest import random_distributions

R = math.sqrt(0.5)


class TestSigma:
    def test_two_point(self, twopoint):
        np.testing.assert_allclose(sigma_matrix(twopoint), [[0.5, -0.5], [-0.5, 0.5]], atol=1e-16)

    def test_single_cell(self):
        np.testing.assert_array_equal(sigma_matrix(DiscreteDistribution([2], [1])), [[0.0]])

    def test_unequal(self):
        s = sigma_matrix(DiscreteDistribution([1, 2], [0.2, 0.8]))
        np.testing.assert_allclose(np.diag(s), [0.8, 0.2], atol=1e-15)
        assert s[0, 1] == pytest.approx(-0.4, abs=1e-15) and s[1, 0] == s[0, 1]

    def test_null_vector_and_psd(self):
        rng = np.random.default_rng(0)
        for d in random_distributions(100):
            s = sigma_matrix(d)
            assert np.max(np.abs(s @ np.sqrt(d.probs))) <= 1e-14
            assert np.min(np.linalg.eigvalsh(s)) >= -1e-12
            v = rng.normal(size=d.m)
            assert v @ s @ v >= -1e-12


class TestScoreSet:
    def test_two_point_hand_values(self, twopoint):
        s = score_set(twopoint)
        np.testing.assert_allclose(s.C, [R / 3, 0], atol=1e-16)
        assert s.gamma1[0] == pytest.approx(1 / 3, abs=1e-15)
        assert s.gamma2[0] == pytest.approx(1 / 9, abs=1e-15)
        assert s.zeta[0] == pytest.approx(2 / 3, abs=1e-15)
        np.testing.assert_allclose(s.H_corrected, [0, R / 3], atol=1e-15)
        np.testing.assert_allclose(s.H_literal, [10 * R / 3, R / 3], atol=1e-15)

    def test_sparsity(self):
        for d in random_distributions(30, seed=2):
            s = score_set(d)
            assert s.C[-1] == 0
            sp = np.sqrt(d.probs)
            for j in range(1, d.m):
                row = j - 1
                assert np.all(s.D1[row, j:] == 0)
                assert np.all(s.D2[row, :j] == 0)
                assert np.all(s.E[row, j:] == 0)
                np.testing.assert_array_equal(s.E[row, :j], -sp[:j])

    def test_H_identities(self):
        for d in random_distributions(30, seed=3):
            s = score_set(d)
            pstar = d.cumprobs[:-1]
            base = s.C + s.gamma1 @ s.D1 + s.gamma2 @ s.D2
            np.testing.assert_allclose(-s.H_literal, base + (pstar ** -2) @ s.E, rtol=1e-13, atol=1e-13)
            np.testing.assert_allclose(-s.H_corrected, base + s.zeta @ s.E, rtol=1e-13, atol=1e-13)

    def test_corrected_H_matches_proof_limits(self):
        """H'z equals minus the hand-assembled (A1) + (A2, zeta-weighted) + (A3) limits."""
        rng = np.random.default_rng(4)
        for d in random_distributions(20, seed=4):
            x, p = list(d.values), list(d.probs)
            m = len(x)
            H = score_set(d).H_corrected
            for _ in range(3):
                z = rng.normal(size=m)
                total = 0.0
                for j in range(m - 1):
                    ps = sum(p[: j + 1])
                    mu_lo = sum(p[h] * x[h] for h in range(j + 1))
                    mu_up = sum(p[h] * x[h] for h in range(j + 1, m))
                    low = sum(x[h] * math.sqrt(p[h]) * z[h] for h in range(j + 1))
                    up = sum(x[h] * math.sqrt(p[h]) * z[h] for h in range(j + 1, m))
                    a1 = p[j] * (1 - ps) / ps * (low / mu_up - mu_lo * up / mu_up ** 2)
                    a2 = -p[j] * mu_lo / mu_up * sum(math.sqrt(p[h]) * z[h] for h in range(j + 1)) / ps ** 2
                    a3 = math.sqrt(p[j]) * (1 - ps) / ps * mu_lo / mu_up * z[j]
                    total += a1 + a2 + a3
                assert H @ z == pytest.approx(-total, rel=1e-10, abs=1e-12)

    def test_needs_two_points(self):
        with pytest.raises(ValidationError):
            score_set(DiscreteDistribution([1], [1]))


class TestVariance:
    def test_two_point(self, twopoint):
        assert asymptotic_variance(twopoint) == pytest.approx(1 / 36, abs=1e-15)
        assert asymptotic_variance(twopoint, "literal") == pytest.approx(2.25, abs=1e-13)

    def test_two_point_closed_form(self):
        # for x = (1, 3) the index is 1 - p1/3, so the variance is p1 (1 - p1) / 9
        for p1 in (0.1, 0.37, 0.5, 0.9):
            d = DiscreteDistribution([1, 3], [p1, 1 - p1])
            assert asymptotic_variance(d) == pytest.approx(p1 * (1 - p1) / 9, rel=1e-13)
            assert delta_variance(d) == pytest.approx(p1 * (1 - p1) / 9, rel=1e-8)

    def test_three_point_exact(self, threepoint):
        # exact rational value from symbolic differentiation of the index
        exact = 9919 / 135000
        assert asymptotic_variance(threepoint) == pytest.approx(exact, rel=1e-13)
        assert delta_variance(threepoint) == pytest.approx(exact, rel=1e-6)

    def test_four_point_exact(self):
        d = DiscreteDistribution([2, 5, 7, 11], [0.1, 0.2, 0.3, 0.4])
        exact = 43841802915659 / 485983265625000
        assert asymptotic_variance(d) == pytest.approx(exact, rel=1e-13)

    def test_single_point(self):
        d = DiscreteDistribution([5], [1])
        assert asymptotic_variance(d) == 0
        assert delta_variance(d) == 0

    def test_unknown_mode(self, twopoint):
        with pytest.raises(ValueError):
            asymptotic_variance(twopoint, "sideways")

    def test_paths_agree(self):
        for d in random_distributions(100, seed=11):
            v = variances(d)
            assert v["influence"] == pytest.approx(v["corrected"], rel=1e-6)
            assert v["delta"] == pytest.approx(v["corrected"], rel=1e-4)

    @pytest.mark.parametrize("c", [0.5, 3, 1e6])
    def test_scale_invariance(self, c):
        for d in random_distributions(20, seed=12):
            a, b = asymptotic_variance(d), asymptotic_variance(d.scaled(c))
            assert abs(a - b) <= 1e-12 * max(1.0, a)

    def test_delta_step_bounds(self, twopoint):
        with pytest.raises(ValidationError):
            delta_variance(twopoint, step=0.01)
        with pytest.raises(ValidationError):
            delta_variance(twopoint, step=0)

    def test_delta_rejects_vanishing_mass(self):
        d = DiscreteDistribution([1, 2], [1e-7, 1 - 1e-7])
        with pytest.raises(ValidationError, match="vanish"):
            delta_variance(d, step=1e-3)

    def test_batch_matches_scalar_with_zero_cells(self):
        rng = np.random.default_rng(13)
        x = np.array([1.0, 2.5, 4.0, 7.0, 11.0, 20.0])
        rows = rng.integers(0, 4, size=(300, x.size))
        rows = rows[rows.sum(axis=1) > 0]
        batch = corrected_variance_batch(x, rows / rows.sum(axis=1, keepdims=True))
        for c, v in zip(rows, batch):
            keep = c > 0
            d = DiscreteDistribution(x[keep], c[keep] / c.sum())
            assert v == pytest.approx(asymptotic_variance(d), rel=1e-10, abs=1e-15)


class TestConfidenceInterval:
    def test_two_point(self):
        rep = confidence_interval(CountVector([1, 1]), [1, 3], 0.95)
        half = norm_ppf(0.975) * math.sqrt((1 / 36) / 2)
        assert rep.estimate == pytest.approx(5 / 6, abs=1e-15)
        assert rep.ci_low == pytest.approx(5 / 6 - half, abs=1e-14)
        assert rep.ci_high == pytest.approx(min(1.0, 5 / 6 + half), abs=1e-14)
        assert rep.ci_low <= rep.estimate <= rep.ci_high

    def test_level_to_zero(self):
        rep = confidence_interval(CountVector([3, 5, 2]), [1, 2, 4], 1e-9)
        assert rep.ci_high - rep.ci_low < 1e-9

    def test_root_n_scaling(self):
        base = np.array([2, 3, 5])
        widths = [confidence_interval(CountVector(base * k), [1, 2, 4]).std_error for k in (1, 4, 16)]
        assert widths[0] / widths[1] == pytest.approx(2, rel=1e-12)
        assert widths[1] / widths[2] == pytest.approx(2, rel=1e-12)

    def test_single_observed_point_degenerates(self):
        rep = confidence_interval(CountVector([0, 4]), [1, 3])
        assert rep.ci_low == rep.ci_high == rep.estimate == 1.0
        assert rep.sigma2_corrected == 0

    def test_clamped(self):
        rep = confidence_interval(CountVector([1, 1]), [1, 3], 0.999)
        assert 0 <= rep.ci_low and rep.ci_high <= 1

    def test_bad_level(self):
        with pytest.raises(ValidationError):
            confidence_interval(CountVector([1, 1]), [1, 3], 1.0)

    def test_report_carries_all_paths(self):
        rep = confidence_interval(CountVector([2, 3, 5]), [1, 2, 4])
        assert rep.sigma2_if == pytest.approx(rep.sigma2_corrected, rel=1e-10)
        assert rep.sigma2_delta == pytest.approx(rep.sigma2_corrected, rel=1e-5)
        assert rep.sigma2_literal > rep.sigma2_corrected
        assert influence_profile(DiscreteDistribution([1, 2, 4], [0.2, 0.3, 0.5])).if_variance \
            == pytest.approx(rep.sigma2_if, rel=1e-12)
