import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heavytail import (
    DegenerateError,
    Degenerate,
    DomainError,
    ModelError,
    Normal,
    ParameterError,
    ParetoI,
    Rademacher,
    Uniform,
    sample,
)
from heavytail.limit_models import (
    CapitalSpec,
    LePageSpec,
    capital_sample,
    default_hill_m,
    gamma_hat,
    geometric_blocks,
    hill_estimator,
    lepage_sample,
    min_limit_survival,
    random_min_sample,
    remainder_bound,
    truncation_length,
    uniform_min_survival,
)
from heavytail.rng import make_rng

from oracles import hill_bruteforce, ks_distance, loglog_tail_slope, mean_log_uniform_1_e


# --- LePage -----------------------------------------------------------------


def test_lepage_one_term_is_transformed_exponential():
    spec = LePageSpec(1.5, Degenerate(1.0), n_terms=1)
    x = lepage_sample(spec, 5, seed=4).values
    e = make_rng(4).standard_exponential((5, 1))[:, 0]
    assert np.allclose(x, e ** (-1.5), rtol=1e-15)


def test_lepage_index_checks():
    with pytest.raises(ParameterError):
        LePageSpec(0.5)
    with pytest.raises(ModelError):
        LePageSpec(0.9, Degenerate(1.0))
    LePageSpec(0.9, Rademacher())


def test_lepage_alpha_is_reciprocal():
    assert LePageSpec(2.0).alpha == 0.5
    assert LePageSpec(0.8, Rademacher()).alpha == 1.25


def test_lepage_a2_tail_slope():
    x = lepage_sample(LePageSpec(2.0, tol=1e-2), 100_000, seed=12).values
    assert abs(loglog_tail_slope(x) + 0.5) <= 0.1


def test_lepage_a1_hill():
    x = lepage_sample(LePageSpec(1.0, Rademacher(), tol=1e-2), 100_000, seed=13)
    assert abs(hill_estimator(x) - 1.0) <= 0.15


def test_lepage_partial_sums_monotone():
    # Y = 1, a > 1: every additional term is positive, so longer truncations dominate
    long = lepage_sample(LePageSpec(1.5, n_terms=50), 1000, seed=14).values
    g = np.cumsum(make_rng(14).standard_exponential((1000, 50)), axis=1)
    partial = np.cumsum(g**-1.5, axis=1)
    assert np.all(np.diff(partial, axis=1) > 0)
    assert np.allclose(long, partial[:, -1], rtol=1e-13)


@pytest.mark.parametrize("a, signal", [(2.0, Degenerate(1.0)), (1.5, Degenerate(2.0)), (1.0, Rademacher()), (0.7, Normal(1.0))])
@pytest.mark.parametrize("tol", [1e-2, 1e-3, 1e-4])
def test_truncation_meets_tolerance(a, signal, tol):
    n = truncation_length(a, signal, tol)
    assert remainder_bound(a, n, signal) <= tol
    if n > 1:
        # minimality; a relative slack covers tolerances the bound hits exactly
        assert remainder_bound(a, n - 1, signal) > tol * (1 - 1e-12)


def test_remainder_bound_dominates_direct_sum():
    # the integral bound is above the actual series sum_{k>N} (k/2)^-a
    a, n = 1.5, 100
    direct = sum((k / 2) ** -a for k in range(n + 1, 2_000_000))
    assert remainder_bound(a, n, Degenerate(1.0)) >= direct


# --- Hill -------------------------------------------------------------------


def test_hill_on_inverse_cdf_grid():
    n = 10_000
    x = (n / np.arange(1, n + 1)) ** 0.5
    assert abs(hill_estimator(x, 100) - 2.0) <= 0.3


def test_hill_matches_bruteforce():
    x = sample(ParetoI(1.3), 5000, seed=2).values
    assert hill_estimator(x, 120) == pytest.approx(hill_bruteforce(x, 120), rel=1e-12)


def test_hill_pareto_average_over_seeds():
    est = [hill_estimator(sample(ParetoI(1.0), 100_000, seed=s), 1000) for s in range(30)]
    assert abs(np.mean(est) - 1.0) <= 0.1


@settings(max_examples=50, deadline=None)
@given(st.integers(min_value=0, max_value=2**32), st.sampled_from([0.25, 2.0, 1024.0]))
def test_hill_scale_invariant(seed, c):
    x = sample(ParetoI(2.0), 500, seed).values
    assert hill_estimator(x, 40) == hill_estimator(c * x, 40)


def test_hill_default_m():
    assert default_hill_m(1000) == 100
    x = sample(ParetoI(2.0), 1000, seed=3).values
    assert hill_estimator(x) == hill_estimator(x, 100)


def test_hill_errors():
    with pytest.raises(ParameterError):
        hill_estimator([1.0, 2.0, 3.0], 3)
    with pytest.raises(DegenerateError):
        hill_estimator([5.0] * 10, 3)


# --- gamma_hat ----------------------------------------------------------------


def test_gamma_hat_constant_e():
    assert gamma_hat(np.full(100, math.e)) == 1.0


def test_gamma_hat_uniform_1_e():
    x = sample(Uniform(1.0, math.e), 1_000_000, seed=5).values
    logs = np.log(x)
    se = logs.std() / math.sqrt(x.size)
    assert abs(gamma_hat(x) - mean_log_uniform_1_e()) <= 3 * se


def test_gamma_hat_pareto():
    x = sample(ParetoI(2.0), 1_000_000, seed=6).values
    se = np.log(x).std() / math.sqrt(x.size)
    assert abs(gamma_hat(x) - 0.5) <= 3 * se


def test_gamma_hat_domain():
    with pytest.raises(DomainError, match="index 1"):
        gamma_hat([1.0, 0.0])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.floats(min_value=1e-3, max_value=1e3), min_size=1, max_size=30), st.data())
def test_gamma_hat_additive(x, data):
    y = data.draw(st.lists(st.floats(min_value=1e-3, max_value=1e3), min_size=len(x), max_size=len(x)))
    x, y = np.array(x), np.array(y)
    assert math.isclose(gamma_hat(x * y), gamma_hat(x) + gamma_hat(y), rel_tol=1e-12, abs_tol=1e-12)


# --- geometric products -----------------------------------------------------


def test_capital_p1_is_single_factor():
    spec = CapitalSpec(Uniform(1.0, 3.0), 1.0)
    batch = capital_sample(spec, 1000, seed=7)
    assert np.all(batch.aux["nu"] == 1)
    rng = make_rng(7)
    rng.geometric(1.0, 1000)
    assert np.allclose(batch.values, rng.uniform(1.0, 3.0, 1000), rtol=1e-15)


def test_capital_mean_steps():
    batch = capital_sample(CapitalSpec(Uniform(1.0, 2.0), 0.05), 100_000, seed=8)
    nu = batch.aux["nu"]
    assert nu.min() >= 1
    se = nu.std() / math.sqrt(nu.size)
    assert abs(nu.mean() - 20.0) <= 3 * se


def test_capital_log_space_equals_direct_product():
    spec = CapitalSpec(Uniform(0.5, 2.0), 0.1)
    rng = make_rng(9)
    checked = 0
    for nu, factors in geometric_blocks(spec, 2000, rng):
        offs = np.concatenate(([0], np.cumsum(nu)[:-1]))
        for start, k in zip(offs, nu):
            if k > 50:
                continue
            chunk = factors[start : start + k]
            direct = math.prod(chunk.tolist()) ** spec.p
            logspace = math.exp(spec.p * float(np.sum(np.log(chunk))))
            assert logspace == pytest.approx(direct, rel=1e-12)
            checked += 1
    assert checked > 1000
    # and capital_sample reduces the very same blocks
    batch = capital_sample(spec, 2000, seed=9)
    rng = make_rng(9)
    again = []
    for nu, factors in geometric_blocks(spec, 2000, rng):
        offs = np.concatenate(([0], np.cumsum(nu)[:-1]))
        again.extend(math.prod(factors[s : s + k].tolist()) ** spec.p for s, k in zip(offs, nu))
    assert np.allclose(batch.values, again, rtol=1e-12)


def test_capital_degenerate_e_converges_to_pareto_one():
    z = capital_sample(CapitalSpec(Degenerate(math.e), 0.01), 100_000, seed=10).values
    assert ks_distance(z, lambda x: 1.0 - 1.0 / np.maximum(x, 1.0)) < 0.02


def test_capital_bounded_factors_give_power_tail():
    z = capital_sample(CapitalSpec(Uniform(1.0, math.e), 0.01), 100_000, seed=11)
    assert abs(hill_estimator(z) - (math.e - 1.0)) <= 0.15


def test_capital_rejects_nonpositive_factor():
    with pytest.raises(ModelError):
        capital_sample(CapitalSpec(Normal(1.0), 0.5), 100, seed=1)


def test_capital_spec_checks():
    with pytest.raises(ParameterError):
        CapitalSpec(Uniform(1, 2), 0.0)


# --- geometric minima -------------------------------------------------------


def test_random_min_p_near_one():
    batch = random_min_sample(CapitalSpec(Uniform(0.0, 1.0), 0.999), 100_000, seed=13, method="direct")
    same = batch.values == batch.aux["first"]
    assert same.mean() >= 0.998
    assert np.all(same[batch.aux["nu"] == 1])


@pytest.mark.parametrize("method", ["order", "direct"])
def test_random_min_limit_law(method):
    batch = random_min_sample(CapitalSpec(Uniform(0.0, 1.0), 0.001), 100_000, seed=14, method=method)
    assert ks_distance(batch.aux["scaled"], lambda s: 1.0 - min_limit_survival(s)) < 0.02
    assert abs(hill_estimator(1.0 / batch.values) - 1.0) <= 0.15


@pytest.mark.parametrize("method", ["order", "direct"])
def test_random_min_exact_prelimit_law(method):
    p = 0.05
    x = random_min_sample(CapitalSpec(Uniform(0.0, 1.0), p), 50_000, seed=15, method=method).values
    assert ks_distance(x, lambda t: 1.0 - uniform_min_survival(t, p)) < 1.63 / math.sqrt(x.size)


def test_uniform_min_survival_closed_form_by_series():
    # P(min > t) = sum_k p (1-p)^(k-1) (1-t)^k, summed directly
    p, t = 0.2, 0.3
    direct = sum(p * (1 - p) ** (k - 1) * (1 - t) ** k for k in range(1, 2000))
    assert uniform_min_survival(t, p) == pytest.approx(direct, rel=1e-12)


def test_random_min_method_check():
    with pytest.raises(ParameterError):
        random_min_sample(CapitalSpec(Uniform(0.0, 1.0), 0.5), 10, seed=1, method="fast")
