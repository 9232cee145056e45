"""Graph builders and brute-force references shared by the test modules."""

from __future__ import annotations

import itertools
import math

import networkx as nx
import numpy as np

from probnucleus import ProbabilisticGraph
from probnucleus.graph import induced_edge_subgraph

SEVEN_EDGES = [
    (1, 2, 1.0), (1, 5, 1.0), (1, 3, 1.0), (1, 4, 0.6), (1, 6, 0.8), (1, 7, 0.8),
    (2, 3, 1.0), (2, 4, 1.0), (2, 5, 0.5), (3, 4, 1.0), (3, 5, 1.0), (6, 7, 0.8),
]


def seven() -> ProbabilisticGraph:
    return ProbabilisticGraph.from_edges(SEVEN_EDGES)


def five_view(g: ProbabilisticGraph | None = None):
    """The subgraph on vertices 1..5, as a view of the full graph."""
    g = g or seven()
    keep = {g.vertex_of(x) for x in (1, 2, 3, 4, 5)}
    return induced_edge_subgraph(g, [i for i, (u, v) in enumerate(g.edges)
                                     if u in keep and v in keep])


def complete(n: int, p: float) -> ProbabilisticGraph:
    return ProbabilisticGraph.from_edges((u, v, p) for u, v in itertools.combinations(range(n), 2))


def tri(g: ProbabilisticGraph, *labels) -> tuple[int, int, int]:
    return tuple(sorted(g.vertex_of(x) for x in labels))


def random_small(rng: np.random.Generator, max_n: int = 8, max_m: int = 16,
                 p_one: float = 0.0) -> ProbabilisticGraph:
    """A dense-ish random graph with at least one triangle when possible."""
    n = int(rng.integers(4, max_n + 1))
    pairs = list(itertools.combinations(range(n), 2))
    m = int(rng.integers(min(len(pairs), 6), min(len(pairs), max_m) + 1))
    chosen = rng.choice(len(pairs), size=m, replace=False)
    triples = []
    for i in sorted(chosen):
        p = 1.0 if rng.random() < p_one else float(1.0 - rng.random())
        triples.append((*pairs[i], p))
    return ProbabilisticGraph.from_edges(triples)


def clustered(seed: int, lo: int = 200, hi: int = 500, p_in: float = 0.7,
              deterministic: bool = False) -> ProbabilisticGraph:
    """Planted-partition graph with communities of 15-30 vertices."""
    rng = np.random.default_rng(seed)
    n = int(rng.integers(lo, hi + 1))
    sizes, left = [], n
    while left > 0:
        s = int(min(left, rng.integers(15, 31)))
        sizes.append(s)
        left -= s
    G = nx.random_partition_graph(sizes, p_in, 2.0 / n, seed=seed)
    return ProbabilisticGraph.from_edges(
        (u, v, 1.0 if deterministic else float(1.0 - rng.random())) for u, v in G.edges())


def brute_triangles(g: ProbabilisticGraph) -> list[tuple[int, int, int]]:
    return [t for t in itertools.combinations(range(g.n), 3)
            if all(g.has_edge(a, b) for a, b in itertools.combinations(t, 2))]


def brute_cliques(g: ProbabilisticGraph) -> list[tuple[int, int, int, int]]:
    return [q for q in itertools.combinations(range(g.n), 4)
            if all(g.has_edge(a, b) for a, b in itertools.combinations(q, 2))]


def brute_support_pmf(probs) -> list[float]:
    """Distribution of the number of successes by enumerating all outcomes."""
    c = len(probs)
    out = [0.0] * (c + 1)
    for bits in itertools.product((0, 1), repeat=c):
        w = math.prod(p if b else 1.0 - p for p, b in zip(probs, bits))
        out[sum(bits)] += w
    return out


def naive_det_scores(g: ProbabilisticGraph) -> dict[tuple[int, int, int], int]:
    """Textbook peeling that recounts every support from scratch each round."""
    alive = set(brute_triangles(g))
    cliques = brute_cliques(g)
    faces = {q: [tuple(sorted(f)) for f in itertools.combinations(q, 3)] for q in cliques}
    out, level = {}, 0
    while alive:
        live = [q for q in cliques if all(f in alive for f in faces[q])]
        support = {t: 0 for t in alive}
        for q in live:
            for f in faces[q]:
                support[f] += 1
        t = min(alive, key=lambda x: (support[x], x))
        level = max(level, support[t])
        out[t] = level
        alive.remove(t)
    return out


def naive_components(g: ProbabilisticGraph, scores, k: int) -> set[frozenset]:
    """Edge sets (as label pairs) of clique-connected groups of triangles scoring >= k."""
    members = {t for t, s in scores.items() if s >= k}
    H = nx.Graph()
    H.add_nodes_from(members)
    for q in brute_cliques(g):
        fs = [tuple(sorted(f)) for f in itertools.combinations(q, 3)]
        if all(f in members for f in fs):
            nx.add_path(H, fs)
    out = set()
    for comp in nx.connected_components(H):
        edges = {tuple(sorted((g.label_of(a), g.label_of(b))))
                 for t in comp for a, b in itertools.combinations(t, 2)}
        out.add(frozenset(edges))
    return out


def label_edges(g: ProbabilisticGraph, nucleus) -> frozenset:
    return frozenset(tuple(sorted((g.label_of(g.edges[e][0]), g.label_of(g.edges[e][1]))))
                     for e in nucleus.edges)
