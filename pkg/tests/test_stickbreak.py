import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.special import betainc

from dirichlet_curve.measures import (
    Beta,
    Cauchy1D,
    RngStream,
    Uniform01,
    UniformCircle,
    bernoulli,
    point_mass,
)
from dirichlet_curve.stats import ks_one_sample, ks_two_sample
from dirichlet_curve.stickbreak import (
    TruncationPolicy,
    default_fixed_point_depth,
    dyadic_weight_draws,
    dyadic_weights,
    sample_dirichlet_mean,
    sample_fixed_point,
    sample_james_aggregation,
    sample_mean_dyadic,
    stick_break_weights,
)

ARCSINE_CDF = lambda x: betainc(0.5, 0.5, np.clip(x, 0.0, 1.0))


def test_policy_validation():
    with pytest.raises(ValueError):
        TruncationPolicy.fixed(0)
    with pytest.raises(ValueError):
        TruncationPolicy.tail(1.5)
    with pytest.raises(ValueError):
        TruncationPolicy(mode="fixed_N", N=3, tail_handling="discard")
    assert TruncationPolicy.fixed(7).label() == "fixed_N(N=7),absorb_into_fresh_atom"


def test_single_stick_is_uniform():
    policy = TruncationPolicy.fixed(1)
    w1 = np.empty(2000)
    for i in range(w1.shape[0]):
        sbw = stick_break_weights(1.0, policy, RngStream(11, i))
        assert sbw.weights.shape == (1,)
        assert sbw.tail == pytest.approx(1.0 - sbw.weights[0], abs=1e-15)
        w1[i] = sbw.weights[0]
    rep = ks_one_sample(w1, lambda x: x)
    assert rep.p_value > 0.001


def test_tail_epsilon_stopping():
    policy = TruncationPolicy.tail(1e-12)
    lengths = np.empty(1000)
    tails = np.empty(1000)
    for i in range(1000):
        sbw = stick_break_weights(2.0, policy, RngStream(12, i))
        lengths[i] = sbw.weights.shape[0]
        tails[i] = sbw.tail
    assert tails.max() < 1e-12
    assert tails.mean() < 1e-12
    # stopping time concentrates near t*log(1/eps) sticks
    assert 45 < lengths.mean() < 70


@settings(deadline=None, derandomize=True, max_examples=40)
@given(
    t=st.floats(min_value=0.05, max_value=50.0),
    n_sticks=st.integers(min_value=1, max_value=300),
    seed=st.integers(min_value=0, max_value=2**32 - 1),
)
def test_weights_telescope(t, n_sticks, seed):
    sbw = stick_break_weights(t, TruncationPolicy.fixed(n_sticks), RngStream(seed))
    assert sbw.weights.shape == (n_sticks,)
    assert np.all(sbw.weights >= 0) and sbw.tail >= 0
    assert abs(sbw.weights.sum() + sbw.tail - 1.0) < 1e-12


def test_mean_draws_bernoulli_arcsine():
    smp = sample_dirichlet_mean(bernoulli(0.5), 1.0, 10**5, rng=RngStream(20))
    assert ks_one_sample(smp, ARCSINE_CDF).p_value > 0.001


def test_mean_draws_arcsine_base():
    smp = sample_dirichlet_mean(Beta(0.5, 0.5), 1.0, 4 * 10**4, rng=RngStream(21))
    rep = ks_one_sample(smp, lambda x: betainc(1.5, 1.5, np.clip(x, 0.0, 1.0)))
    assert rep.p_value > 0.001


def test_mean_draws_circle_radius():
    smp = sample_dirichlet_mean(UniformCircle(), 2.0, 4 * 10**4, rng=RngStream(22))
    r2 = np.sum(smp.draws**2, axis=1)
    rep = ks_one_sample(r2, lambda u: 1.0 - (1.0 - np.clip(u, 0.0, 1.0)) ** 2)
    assert rep.p_value > 0.001


def test_tail_handlings_agree():
    absorb = TruncationPolicy.tail(1e-12, "absorb_into_fresh_atom")
    drop = TruncationPolicy.tail(1e-12, "drop_renormalize")
    a = sample_dirichlet_mean(bernoulli(0.5), 1.0, 3 * 10**4, absorb, RngStream(23))
    b = sample_dirichlet_mean(bernoulli(0.5), 1.0, 3 * 10**4, drop, RngStream(24))
    assert ks_one_sample(a, ARCSINE_CDF).p_value > 0.001
    assert ks_one_sample(b, ARCSINE_CDF).p_value > 0.001
    assert ks_two_sample(a, b).p_value > 0.001


def test_renormalize_rejected_without_mean():
    policy = TruncationPolicy.tail(1e-12, "drop_renormalize")
    with pytest.raises(ValueError):
        sample_dirichlet_mean(Cauchy1D(0.0, 1.0), 1.0, 100, policy, RngStream(25))


def test_mean_and_variance_laws():
    t = 3.0
    smp = sample_dirichlet_mean(Uniform01(), t, 10**5, rng=RngStream(26))
    x = smp.values()
    n = x.shape[0]
    se_mean = x.std(ddof=1) / np.sqrt(n)
    assert abs(x.mean() - 0.5) < 3 * se_mean
    # Var(X_t) = sigma^2 / (t + 1)
    target = (1.0 / 12.0) / (t + 1.0)
    v = x.var(ddof=1)
    c = x - x.mean()
    se_var = np.sqrt(((c**4).mean() - v**2) / n)
    assert abs(v - target) < 3 * se_var


def test_fixed_point_depth_default():
    assert default_fixed_point_depth(1.0) == 40
    assert default_fixed_point_depth(10**6) == 10_000


def test_fixed_point_bernoulli():
    smp = sample_fixed_point(bernoulli(0.5), 1.0, 4 * 10**4, rng=RngStream(30))
    assert (1.0 / 2.0) ** default_fixed_point_depth(1.0) < 1e-10
    assert ks_one_sample(smp, ARCSINE_CDF).p_value > 0.001


def test_fixed_point_single_step():
    c, t = 2.0, 3.0
    smp = sample_fixed_point(point_mass(c), t, 2 * 10**4, depth=1, rng=RngStream(31))
    y = smp.values() / c
    rep = ks_one_sample(y, lambda u: 1.0 - (1.0 - np.clip(u, 0.0, 1.0)) ** t)
    assert rep.p_value > 0.001


def test_fixed_point_cauchy_invariant():
    smp = sample_fixed_point(Cauchy1D(0.0, 1.0), 3.0, 2 * 10**4, rng=RngStream(32))
    rep = ks_one_sample(smp, lambda x: 0.5 + np.arctan(x) / np.pi)
    assert rep.p_value > 0.001


def test_dyadic_level_one():
    w = dyadic_weights(2.0, 1, RngStream(40))
    assert w.shape == (2,)
    assert w.sum() == pytest.approx(1.0, abs=1e-12)
    draws = dyadic_weight_draws(2.0, 1, 2 * 10**4, RngStream(41).generator())
    rep = ks_one_sample(draws[:, 1], lambda x: np.clip(x, 0.0, 1.0))
    assert rep.p_value > 0.001


def test_dyadic_rows_sum_to_one():
    draws = dyadic_weight_draws(0.7, 5, 500, RngStream(42).generator())
    assert np.all(draws >= 0)
    assert np.allclose(draws.sum(axis=1), 1.0, atol=1e-12)


def test_dyadic_leaf_marginal():
    t, k = 2.0, 3
    draws = dyadic_weight_draws(t, k, 10**5, RngStream(43).generator())
    a = t / 2**k
    rep = ks_one_sample(draws[:, 0], lambda x: betainc(a, (2**k - 1) * a, np.clip(x, 0.0, 1.0)))
    assert rep.p_value > 0.001


def test_dyadic_mean_point_mass():
    smp = sample_mean_dyadic(point_mass(0.3), 1.5, 1, 100, RngStream(44))
    assert np.allclose(smp.values(), 0.3, atol=1e-12)


def test_dyadic_mean_bernoulli():
    smp = sample_mean_dyadic(bernoulli(0.5), 1.0, 8, 10**5, RngStream(45))
    assert ks_one_sample(smp, ARCSINE_CDF).p_value > 0.001


def test_dyadic_vs_stick():
    a = sample_mean_dyadic(Uniform01(), 1.0, 10, 10**5, RngStream(46))
    b = sample_dirichlet_mean(Uniform01(), 1.0, 10**5, rng=RngStream(47))
    assert ks_two_sample(a, b).p_value > 0.001


def test_james_point_mass_thins_bernoulli():
    t0, t, p = 1.0, 2.0, 0.5
    smp = sample_james_aggregation([(t0, point_mass(0.0)), (t, bernoulli(p))], 5 * 10**4, RngStream(50))
    rep = ks_one_sample(smp, lambda x: betainc(t * p, t * (1 - p) + t0, np.clip(x, 0.0, 1.0)))
    assert rep.p_value > 0.001


def test_james_point_mass_scales_by_beta():
    t0, t = 2.0, 1.0
    smp = sample_james_aggregation([(t0, point_mass(0.0)), (t, Beta(0.5, 0.5))], 4 * 10**4, RngStream(51))
    gen = RngStream(52).generator()
    u = gen.beta(t, t0, size=4 * 10**4)
    x = gen.beta(1.5, 1.5, size=4 * 10**4)
    assert ks_two_sample(smp, u * x).p_value > 0.001


def test_james_single_part():
    a = sample_james_aggregation([(1.0, Uniform01())], 3 * 10**4, RngStream(53))
    b = sample_dirichlet_mean(Uniform01(), 1.0, 3 * 10**4, rng=RngStream(54))
    assert ks_two_sample(a, b).p_value > 0.001


def test_james_validation():
    with pytest.raises(ValueError):
        sample_james_aggregation([], 100, RngStream(55))
    with pytest.raises(ValueError):
        sample_james_aggregation([(0.0, Uniform01())], 100, RngStream(55))
    with pytest.raises(ValueError):
        sample_james_aggregation([(1.0, Uniform01()), (1.0, UniformCircle())], 100, RngStream(55))
