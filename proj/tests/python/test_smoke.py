import math

import pytest

import robust_risk as rr


def test_partial_moments_and_quantiles():
    coin = rr.PriorDistribution.empirical([(0.0, 0.5), (1.0, 0.5)])
    assert rr.partial_moment_plus(coin, 0.0, 1) == pytest.approx(0.5)
    normal = rr.PriorDistribution.normal(0.0, 1.0)
    assert rr.partial_moment_plus(normal, 0.0, 1) == pytest.approx(1 / math.sqrt(2 * math.pi))
    four = rr.PriorDistribution.empirical_uniform([1, 2, 3, 4])
    assert rr.var(four, 0.5) == 2.0


def test_robust_expectiles():
    three = rr.PriorDistribution.empirical_uniform([1, 2, 3])
    assert rr.robust_expectile_linear(three, 0.75, 1.0) == pytest.approx(30 / 11, abs=1e-12)
    assert rr.dual_expectile_max(three, 0.75, 1.0) == pytest.approx(30 / 11, abs=1e-12)
    expo = rr.PriorDistribution.exponential(1.0)
    assert rr.robust_expectile_ball(expo, 0.7, 0.0) == rr.expectile(expo, 0.7)
    assert rr.robust_expectile_ball(expo, 0.7, 0.5) > rr.expectile(expo, 0.7)


def test_transforms_and_conjugates():
    h = rr.LossSpec.pinball(0.3)
    assert rr.lambda_c_transform(h, 1, 0.8, 2.0) == pytest.approx(0.6)
    assert math.isinf(rr.lambda_c_transform(h, 1, 0.5, 0.0))
    assert rr.finiteness_threshold(rr.LossSpec.asym_quadratic(0.25), 2) == 0.75
    assert rr.conjugate(rr.Penalization.ball(0.3), 4.0) == pytest.approx(1.2)


def test_custom_loss_oce():
    loss = rr.LossSpec.custom(lambda x: 1.0 + max(x, 0.0), 1.0, 1.0)
    r = rr.robust_oce(rr.PriorDistribution.point_mass(0.0), loss, 1, rr.Penalization.linear(2.0))
    assert r.value == pytest.approx(1.0, abs=1e-9)


def test_errors_are_typed():
    coin = rr.PriorDistribution.empirical([(0.0, 0.5), (1.0, 0.5)])
    with pytest.raises(rr.DeltaTooSmall):
        rr.robust_expectile_linear(coin, 0.75, 0.7)
    with pytest.raises(rr.Infeasible):
        rr.robust_functional(coin, rr.LossSpec.pinball(0.5), 1, rr.Penalization.linear(0.2), 0.0)
    with pytest.raises(rr.InvalidInput):
        rr.PriorDistribution.normal(0.0, -1.0)
    assert issubclass(rr.InvalidInput, rr.Error)


def test_wasserstein():
    a = rr.PriorDistribution.empirical([(0.0, 0.5), (1.0, 0.5)])
    b = rr.PriorDistribution.empirical([(0.0, 0.25), (1.0, 0.75)])
    assert rr.wasserstein_1d(a, b, 1) == pytest.approx(0.25)
