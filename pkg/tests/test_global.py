import numpy as np
import pytest

from probnucleus import (
    SamplingConfig,
    build_index,
    compute_scores,
    fg_decompose,
    wg_decompose,
)
from probnucleus.global_nuclei import GlobalSearch
from probnucleus.local import assemble_nuclei
from probnucleus.oracle import OracleBudget

from _graphs import complete, seven, random_small


def labels(g, n):
    return [g.label_of(v) for v in n.vertices]


def setup(g, theta):
    idx = build_index(g)
    return idx, compute_scores(g, idx, theta)


def test_overlapping_pair_with_both_estimators():
    g = seven()
    idx, scores = setup(g, 0.42)
    for est in ("oracle", "mc"):
        out = fg_decompose(g, idx, scores, 0.42, SamplingConfig(base_seed=7), estimator=est)
        assert sorted(labels(g, n) for n in out) == [[1, 2, 3, 4], [1, 2, 3, 5]]
        assert all(n.mode == "global" and n.k == 1 for n in out)


def test_five_vertex_candidate_rejected():
    g = seven()
    idx, scores = setup(g, 0.42)
    search = GlobalSearch(g, idx, 0.42, SamplingConfig(), "oracle", OracleBudget())
    both = tuple(sorted([tuple(g.vertex_of(x) for x in (1, 2, 3, 4)),
                         tuple(g.vertex_of(x) for x in (1, 2, 3, 5))]))
    assert not search.accepts(both, 1)
    assert search.accepts(both[:1], 1)


def test_keep_nonmaximal_returns_superset():
    g = seven()
    idx, scores = setup(g, 0.3)
    a = fg_decompose(g, idx, scores, 0.3, estimator="oracle")
    b = fg_decompose(g, idx, scores, 0.3, estimator="oracle", keep_nonmaximal=True)
    assert len(b) >= len(a)
    assert all(any(set(x.edges) <= set(y.edges) for y in a) for x in b)
    # at 0.3 the union of both cliques passes
    assert [labels(g, n) for n in a] == [[1, 2, 3, 4, 5]]


def test_weakly_global_seven_vertex():
    g = seven()
    idx, scores = setup(g, 0.42)
    out = wg_decompose(g, idx, scores, 0.42, estimator="oracle")
    (n,) = out
    (local,) = assemble_nuclei(idx, scores, 1)
    assert n.edges == local.edges and n.mode == "weakly-global"


def test_certain_k5():
    g = complete(5, 1.0)
    idx, scores = setup(g, 0.9)
    fg = fg_decompose(g, idx, scores, 0.9, k=2)
    assert len(fg) == 1 and len(fg[0].edges) == 10


def test_k5_weakly_global_empty_at_level_two():
    g = complete(5, 0.6)
    idx, scores = setup(g, 0.01)
    assert wg_decompose(g, idx, scores, 0.01, estimator="oracle", k=2) == []
    assert fg_decompose(g, idx, scores, 0.01, estimator="oracle", k=2) == []


def test_level_filter_and_validation():
    g = seven()
    idx, scores = setup(g, 0.42)
    assert fg_decompose(g, idx, scores, 0.42, k=5) == []
    with pytest.raises(ValueError):
        fg_decompose(g, idx, scores, 0.42, estimator="exact")
    with pytest.raises(ValueError):
        wg_decompose(g, build_index(complete(4, 0.5)), scores, 0.42)


@pytest.mark.parametrize("seed", range(8))
def test_mc_is_deterministic_and_contained(seed):
    g = random_small(np.random.default_rng(seed), max_n=8, max_m=20, p_one=0.6)
    idx, scores = setup(g, 0.2)
    cfg = SamplingConfig(base_seed=seed)
    a = fg_decompose(g, idx, scores, 0.2, cfg)
    b = fg_decompose(g, idx, scores, 0.2, SamplingConfig(base_seed=seed, n_jobs=3))
    assert a == b
    for n in a:
        local = [m.edge_set() for m in assemble_nuclei(idx, scores, n.k)]
        assert any(n.edge_set() <= m for m in local)
    for n in wg_decompose(g, idx, scores, 0.2, cfg):
        local = [set(m.triangles) for m in assemble_nuclei(idx, scores, n.k)]
        assert any(set(n.triangles) <= m for m in local)


@pytest.mark.parametrize("seed", range(6))
def test_candidate_closure(seed):
    g = random_small(np.random.default_rng(40 + seed), max_n=8, max_m=24, p_one=0.7)
    idx, scores = setup(g, 0.1)
    search = GlobalSearch(g, idx, 0.1, SamplingConfig(), "mc", OracleBudget())
    for k in range(1, scores.k_max + 1):
        members = {t for t, s in scores.score.items() if s >= k}
        tri_cliques = {t: [idx.clique_vertices(t, z) for z in idx.profiles[t].ext_vertices
                           if set(idx.clique_triangles(t, z)) <= members] for t in members}
        for seed_t in members:
            cliques = search._closure(seed_t, tri_cliques, k)
            count = {}
            for q in cliques:
                for t in search._face_ids(q):
                    count[t] = count.get(t, 0) + 1
            assert all(c >= k for c in count.values())
