import math

import numpy as np
import pytest

from probnucleus import (
    DomainError,
    ProbabilisticGraph,
    SamplingConfig,
    build_index,
    estimate_tails,
    exact_tails,
    required_samples,
)
from probnucleus.sampling import count_hits, sample_presence, sample_world

from _graphs import complete, seven, five_view, random_small, tri


def test_required_samples():
    assert required_samples(0.1, 0.1) == 150
    assert required_samples(1.0, 2 / math.e ** 2) == 1
    for bad in [(0, 0.1), (0.1, 0), (-1, 0.5), (0.1, 1.5)]:
        with pytest.raises(DomainError):
            required_samples(*bad)


def test_default_sample_count():
    assert SamplingConfig().n_samples == 200
    assert SamplingConfig(epsilon=0.05, delta=0.01).n_samples == required_samples(0.05, 0.01)
    assert SamplingConfig(n_override=150).n_samples == 150
    with pytest.raises(DomainError):
        SamplingConfig(n_override=0)


def test_edge_frequency():
    g = ProbabilisticGraph.from_edges([(0, 1, 0.5)])
    cfg = SamplingConfig(base_seed=12)
    freq = np.mean([sample_presence(g, i, cfg)[0] for i in range(10_000)])
    assert abs(freq - 0.5) <= 0.02


def test_certain_and_near_impossible_edges():
    g = ProbabilisticGraph.from_edges([(0, 1, 1.0), (1, 2, 1e-12)])
    cfg = SamplingConfig()
    for i in range(50):
        assert sample_presence(g, i, cfg).tolist() == [True, False]


def test_samples_are_keyed_by_index_only():
    g = seven()
    cfg = SamplingConfig(base_seed=3)
    forward = [sample_presence(g, i, cfg) for i in range(20)]
    backward = [sample_presence(g, i, cfg) for i in reversed(range(20))][::-1]
    assert all((a == b).all() for a, b in zip(forward, backward))
    other = SamplingConfig(base_seed=4)
    assert any((sample_presence(g, i, other) != forward[i]).any() for i in range(20))


def test_view_samples_stay_inside_view():
    g = seven()
    h = five_view(g)
    w = sample_world(h, 0, SamplingConfig())
    assert not (w.present & ~h.edge_mask).any()


def test_threads_do_not_change_counts():
    g = complete(6, 0.7)
    idx = build_index(g)
    tris = list(idx.triangles)
    one = count_hits(g, tris, 2, "weakly-global", SamplingConfig(base_seed=9, n_jobs=1), idx)
    four = count_hits(g, tris, 2, "weakly-global", SamplingConfig(base_seed=9, n_jobs=4), idx)
    assert one == four


def test_certain_k5_estimates_one():
    g = complete(5, 1.0)
    for mode in ("global", "weakly-global"):
        est = estimate_tails(g, list(build_index(g).triangles), 2, mode, SamplingConfig())
        assert set(est.values()) == {1.0}


def test_five_vertex_global_estimate():
    g = seven()
    h = five_view(g)
    est = estimate_tails(h, [tri(g, 1, 3, 5)], 1, "global", SamplingConfig(n_override=150, base_seed=1))
    assert abs(est[tri(g, 1, 3, 5)] - 0.3) <= 0.1


@pytest.mark.parametrize("mode", ["global", "weakly-global"])
def test_unbiased_against_oracle(mode):
    rng = np.random.default_rng(77)
    g = random_small(rng, max_n=6, max_m=12, p_one=0.3)
    while not len(build_index(g)):
        g = random_small(rng, max_n=6, max_m=12, p_one=0.3)
    idx = build_index(g)
    tris = list(idx.triangles)
    exact = exact_tails(g, tris, 1, mode, index=idx)
    runs, n = 40, 200
    means = {t: 0.0 for t in tris}
    for seed in range(runs):
        est = estimate_tails(g, tris, 1, mode, SamplingConfig(n_override=n, base_seed=seed), idx)
        for t in tris:
            means[t] += est[t] / runs
    for t in tris:
        p = exact[t]
        se = math.sqrt(max(p * (1 - p), 1e-12) / (n * runs))
        assert abs(means[t] - p) <= 3 * se + 1e-12, (t, means[t], p)


def test_bad_mode():
    g = complete(4, 0.5)
    with pytest.raises(ValueError):
        estimate_tails(g, [(0, 1, 2)], 1, "local", SamplingConfig())
