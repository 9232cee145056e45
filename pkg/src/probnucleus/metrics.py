"""Probabilistic density and clustering coefficient of a (sub)graph."""

from __future__ import annotations

import math
from collections import defaultdict

from .graph import ProbabilisticGraph, SubgraphView
from .sampling import DomainError


def pd(h: ProbabilisticGraph | SubgraphView) -> float:
    """Expected edge count over the number of vertex pairs."""
    triples = h.edge_triples()
    n = len({x for u, v, _ in triples for x in (u, v)})
    if n < 2:
        raise DomainError("probabilistic density needs at least two vertices")
    return math.fsum(p for _, _, p in triples) / (0.5 * n * (n - 1))


def pcc(h: ProbabilisticGraph | SubgraphView) -> float:
    """Expected closed wedges over expected wedges.

    Three times the summed triangle probabilities, divided by the sum over
    each centre vertex and unordered pair of its neighbours of the product
    of the two edge probabilities.
    """
    adj: dict[int, dict[int, float]] = defaultdict(dict)
    for u, v, p in h.edge_triples():
        adj[u][v] = p
        adj[v][u] = p
    wedges = []
    for nbrs in adj.values():
        s = math.fsum(nbrs.values())
        sq = math.fsum(p * p for p in nbrs.values())
        wedges.append(0.5 * (s * s - sq))
    denom = math.fsum(wedges)
    if denom <= 0:
        raise DomainError("clustering coefficient undefined without wedges")
    closed = []
    for u, nbrs in adj.items():
        for v, puv in nbrs.items():
            if v <= u:
                continue
            for w in nbrs.keys() & adj[v].keys():
                if w > v:
                    closed.append(puv * nbrs[w] * adj[v][w])
    return 3.0 * math.fsum(closed) / denom
