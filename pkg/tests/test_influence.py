import numpy as np
import pytest

from zenga.asymptotics import asymptotic_variance, delta_variance
from zenga.distribution import DiscreteDistribution, ValidationError
from zenga.indices import zenga_population
from zenga.influence import contaminate, influence_function, influence_profile, numeric_influence

from conftest import random_distributions


def test_two_point_hand_values(twopoint):
    assert influence_function(twopoint, 1) == pytest.approx(-1 / 6, abs=1e-15)
    assert influence_function(twopoint, 2) == pytest.approx(1 / 6, abs=1e-15)


@pytest.mark.parametrize("values,probs,expected", [
    # exact values from symbolic differentiation along the contamination path
    ([1, 2, 3], [1 / 3] * 3, [-1 / 60, -97 / 300, 17 / 50]),
    ([2, 5, 7, 11], [0.1, 0.2, 0.3, 0.4],
     [17312 / 53625, -1647 / 7150, -1194142 / 3485625, 369361 / 1267500]),
])
def test_exact_symbolic_values(values, probs, expected):
    prof = influence_profile(DiscreteDistribution(values, probs))
    np.testing.assert_allclose(prof.if_values, expected, rtol=1e-13, atol=1e-15)


def test_numeric_oracle_two_point(twopoint):
    assert numeric_influence(twopoint, 1, 1e-6) == pytest.approx(-1 / 6, abs=1e-5)
    assert numeric_influence(twopoint, 2, 1e-6) == pytest.approx(1 / 6, abs=1e-5)


def test_numeric_error_is_first_order(tenpoint):
    for k in (1, 5, 10):
        exact = influence_function(tenpoint, k)
        errs = [abs(numeric_influence(tenpoint, k, eps) - exact) for eps in (1e-3, 5e-4, 2.5e-4)]
        assert errs[1] / errs[0] == pytest.approx(0.5, abs=0.05)
        assert errs[2] / errs[1] == pytest.approx(0.5, abs=0.05)


def test_eps_range(twopoint):
    with pytest.raises(ValidationError):
        numeric_influence(twopoint, 1, 0.01)
    with pytest.raises(ValidationError):
        numeric_influence(twopoint, 3, 1e-6)


def test_profile_two_point(twopoint):
    prof = influence_profile(twopoint)
    np.testing.assert_allclose(prof.if_values, [-1 / 6, 1 / 6], atol=1e-15)
    assert prof.if_variance == pytest.approx(1 / 36, abs=1e-15)


def test_single_point_profile():
    prof = influence_profile(DiscreteDistribution([4], [1]))
    np.testing.assert_array_equal(prof.if_values, [0])
    assert prof.if_variance == 0


def test_mean_zero_and_variance_identity():
    for d in random_distributions(100, seed=21):
        prof = influence_profile(d)
        assert abs(np.dot(d.probs, prof.if_values)) <= 1e-12
        assert prof.if_variance == pytest.approx(np.sum(d.probs * prof.if_values ** 2), rel=1e-15)
        assert prof.if_variance == pytest.approx(asymptotic_variance(d), rel=1e-6)


def test_ten_point_matches_delta(tenpoint):
    assert influence_profile(tenpoint).if_variance == pytest.approx(delta_variance(tenpoint), rel=1e-4)


@pytest.mark.parametrize("c", [0.5, 3, 1e6])
def test_scale_invariance(c):
    for d in random_distributions(20, seed=22):
        a = influence_profile(d).if_values
        b = influence_profile(d.scaled(c)).if_values
        assert np.max(np.abs(a - b)) <= 1e-12


def test_contaminate_off_support(twopoint):
    d = contaminate(twopoint, 2.0, 0.1)
    np.testing.assert_allclose(d.values, [1, 2, 3])
    np.testing.assert_allclose(d.probs, [0.45, 0.1, 0.45])
    same = contaminate(twopoint, 1.0, 0.1)
    np.testing.assert_allclose(same.probs, [0.55, 0.45])


def test_contaminate_on_support_agrees_with_numeric(tenpoint):
    eps = 1e-6
    z0, _ = zenga_population(tenpoint)
    z1, _ = zenga_population(contaminate(tenpoint, tenpoint.values[3], eps))
    assert (z1 - z0) / eps == pytest.approx(numeric_influence(tenpoint, 4, eps), rel=1e-6)
