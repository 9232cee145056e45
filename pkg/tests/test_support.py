import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import stats

from probnucleus import ApproxMethod, Hyperparams, dp_distribution, max_k
from probnucleus.motifs import ExtensionProfile
from probnucleus.support import (
    dp_max_k,
    hybrid_max_k,
    poisson_pmf,
    select_method,
    variance_ratio,
)

from _graphs import brute_support_pmf


def profile(probs, tri=1.0):
    probs = tuple(float(p) for p in probs)
    return ExtensionProfile(tri, probs, tuple(range(len(probs))))


probs_st = st.lists(st.floats(min_value=1e-6, max_value=1.0), min_size=0, max_size=12)


def test_example_two_extensions():
    d = dp_distribution(profile([0.216, 0.216], tri=0.216))
    assert d.tail(2) == pytest.approx(0.216 ** 3, abs=1e-12)
    assert d.tail(0) == pytest.approx(0.216)


def test_single_extension_half():
    d = dp_distribution(profile([0.5]))
    assert d.tail(1) == pytest.approx(0.5)
    assert max_k(profile([0.5]), 0.42) == 1
    assert max_k(profile([0.5]), 0.6) == 0


def test_excluded_triangle_is_none_not_zero():
    assert max_k(profile([0.9], tri=0.3), 0.42) is None
    assert max_k(profile([], tri=0.5), 0.42) == 0


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.5])
def test_theta_domain(bad):
    with pytest.raises(ValueError):
        max_k(profile([0.5]), bad)


@pytest.mark.parametrize("seed", range(40))
def test_dp_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    probs = 1.0 - rng.random(int(rng.integers(0, 7)))
    tri = float(1.0 - rng.random())
    d = dp_distribution(profile(probs, tri))
    brute = brute_support_pmf(probs)
    for j, p in enumerate(brute):
        assert d.pmf(j) == pytest.approx(tri * p, abs=1e-12)


@given(probs_st, st.floats(min_value=0.01, max_value=1.0))
@settings(max_examples=200, deadline=None)
def test_capped_dp_agrees_with_full_dp(probs, theta):
    prof = profile(probs)
    full = dp_distribution(prof).max_k(theta)
    assert dp_max_k(prof, theta) == full
    if full is not None:
        # any cap at or above the answer reproduces it
        assert dp_max_k(prof, theta, cap=full) == full
        assert dp_max_k(prof, theta, cap=full + 3) == full


@given(probs_st, st.randoms(use_true_random=False))
@settings(max_examples=100, deadline=None)
def test_permutation_invariance(probs, rnd):
    shuffled = list(probs)
    rnd.shuffle(shuffled)
    a, b = dp_distribution(profile(probs)), dp_distribution(profile(shuffled))
    for j in range(len(probs) + 1):
        assert a.pmf(j) == pytest.approx(b.pmf(j), abs=1e-12)


@given(probs_st, st.floats(min_value=0.01, max_value=0.99))
@settings(max_examples=100, deadline=None)
def test_monotone_in_theta_and_in_probabilities(probs, theta):
    prof = profile(probs)
    k = max_k(prof, theta)
    assert max_k(prof, min(1.0, theta + 0.01)) <= k
    raised = profile([min(1.0, p * 1.5) for p in probs])
    assert max_k(raised, theta) >= k


def test_tail_is_non_increasing():
    d = dp_distribution(profile(np.linspace(0.05, 0.95, 30)))
    tails = [d.tail(j) for j in range(32)]
    assert all(a >= b - 1e-15 for a, b in zip(tails, tails[1:]))
    assert d.tail(31) == 0.0


def test_poisson_pmf_matches_scipy():
    got = poisson_pmf(3.7, 40)
    assert np.allclose(got, stats.poisson.pmf(np.arange(41), 3.7), atol=1e-15)
    assert poisson_pmf(0.0, 3).tolist() == [1.0, 0.0, 0.0, 0.0]


@pytest.mark.parametrize("method", list(ApproxMethod))
def test_approximations_close_on_easy_profiles(method):
    rng = np.random.default_rng(11)
    prof = profile(0.05 * (1.0 - rng.random(60)))
    exact = max_k(prof, 0.3)
    assert abs(max_k(prof, 0.3, method) - exact) <= (2 if method is ApproxMethod.CLT else 1)


def test_degenerate_profiles_for_every_method():
    for method in ApproxMethod:
        assert max_k(profile([1.0] * 5), 0.5, method) == 5
        assert max_k(profile([]), 0.5, method) == 0


def test_selection_rules():
    hp = Hyperparams()
    assert select_method(profile([0.5] * 200), hp) is ApproxMethod.CLT
    assert select_method(profile([0.1] * 50), hp) is ApproxMethod.POISSON
    assert select_method(profile([0.9] * 3), hp) is ApproxMethod.TRANSLATED_POISSON
    assert select_method(profile([0.3, 0.31, 0.3]), hp) is ApproxMethod.BINOMIAL
    assert select_method(profile([0.05, 0.95]), hp) is ApproxMethod.DP


def test_variance_ratio_bounds():
    assert variance_ratio([0.3] * 5) == pytest.approx(1.0)
    assert variance_ratio([]) == 1.0
    assert 0 <= variance_ratio([0.01, 0.99]) < 0.1


def test_hyperparams_parse_and_validate():
    assert Hyperparams.parse("10,5,0.2,0.8") == Hyperparams(10, 5, 0.2, 0.8)
    for bad in ("1,2,3", "a,b,c,d", "10,5,1.5,0.8", "-1,5,0.2,0.8"):
        with pytest.raises(ValueError):
            Hyperparams.parse(bad)


def test_hybrid_uses_selected_method():
    prof = profile([0.1] * 50)
    assert hybrid_max_k(prof, 0.3) == max_k(prof, 0.3, "poisson")


def test_le_cam_on_one_profile():
    probs = np.full(40, 0.05)
    d = dp_distribution(profile(probs))
    pois = stats.poisson.pmf(np.arange(41), probs.sum())
    dist = sum(abs(d.pmf(j) - pois[j]) for j in range(41)) + stats.poisson.sf(40, probs.sum())
    assert dist < 2 * math.fsum(probs ** 2)
