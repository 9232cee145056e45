"""Exact tail probabilities by enumerating every possible world.

Exponential in the number of uncertain edges; meant as ground truth for
graphs with a couple of dozen edges at most. Edges with probability one are
held fixed, since worlds without them have probability zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .deterministic import MotifTable, _is_k_nucleus, _peel
from .graph import ProbabilisticGraph, SubgraphView
from .motifs import TriangleIndex, cached_index

MODES = ("local", "global", "weakly-global")

_CHUNK = 1 << 14


class BudgetError(RuntimeError):
    """Raised when exhaustive enumeration would exceed the edge budget."""


@dataclass(frozen=True)
class OracleBudget:
    max_edges: int = 20

    def check(self, n_edges: int) -> None:
        if n_edges > self.max_edges:
            raise BudgetError(
                f"subgraph has {n_edges} edges; exhaustive enumeration is capped "
                f"at {self.max_edges} (2^{n_edges} worlds)")


def exact_tail(h: ProbabilisticGraph | SubgraphView, t, k: int, mode: str = "local",
               budget: OracleBudget = OracleBudget(), index: TriangleIndex | None = None) -> float:
    """``Pr(X >= k)`` for triangle ``t`` in ``h`` under ``mode``."""
    return exact_tails(h, [t], k, mode, budget, index)[_key(h, t, index)]


def exact_tails(h, triangles: Iterable, k: int, mode: str = "local",
                budget: OracleBudget = OracleBudget(),
                index: TriangleIndex | None = None,
                table: MotifTable | None = None) -> dict[tuple[int, int, int], float]:
    """Exact tails for several triangles of ``h`` from one enumeration.

    Triangles are vertex triples in internal ids; the result is keyed by
    the sorted triple. ``table`` overrides the motifs taken from ``h``,
    e.g. to restrict them to a chosen set of 4-cliques.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    view = h if isinstance(h, SubgraphView) else h.full_view()
    budget.check(view.m)
    if table is None:
        table = MotifTable.for_view(view, index)
    idx = table.index
    keys = [_key(h, t, idx) for t in triangles]
    pos = []
    for key in keys:
        tid = idx.id_of(key)
        if tid not in table.position:
            raise ValueError(f"triangle {key} is not contained in the subgraph")
        pos.append(table.position[tid])

    weights = {key: [] for key in keys}
    for present, prob in _worlds(view):
        tri_on = present[:, table.tri_edges].all(axis=2)
        clq_on = present[:, table.clique_edges].all(axis=2)
        if mode == "local":
            support = clq_on.astype(np.int64) @ _incidence(table)
            hit = tri_on & (support >= k)
            for key, p in zip(keys, pos):
                weights[key].extend(prob[hit[:, p]].tolist())
            continue
        edges_on = present & view.edge_mask
        for w in range(len(prob)):
            if mode == "global":
                if not _is_k_nucleus(table, edges_on[w], tri_on[w], clq_on[w], k):
                    continue
                for key, p in zip(keys, pos):
                    if tri_on[w, p]:
                        weights[key].append(prob[w])
            else:
                if not tri_on[w, pos].any():
                    continue
                scores = _peel(table, tri_on[w], clq_on[w])
                for key, p in zip(keys, pos):
                    if scores.get(p, -1) >= k:
                        weights[key].append(prob[w])
    return {key: math.fsum(v) for key, v in weights.items()}


def world_probability_total(h, budget: OracleBudget = OracleBudget()) -> float:
    """Sum of all world probabilities; one up to rounding."""
    view = h if isinstance(h, SubgraphView) else h.full_view()
    budget.check(view.m)
    return math.fsum(p for _, prob in _worlds(view) for p in prob.tolist())


def _worlds(view: SubgraphView):
    """Yield ``(presence, probability)`` chunks over all worlds of ``view``.

    ``presence`` has one row per world over the parent's edges.
    """
    g = view.parent
    eids = view.edge_ids
    probs = g.probs[eids]
    free = eids[probs < 1.0]
    fixed = eids[probs >= 1.0]
    pf = g.probs[free].astype(np.longdouble)
    n_free = len(free)
    total = 1 << n_free
    bits = np.arange(n_free, dtype=np.int64)
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        on = ((codes[:, None] >> bits) & 1).astype(bool)
        present = np.zeros((len(codes), g.m), dtype=bool)
        present[:, fixed] = True
        present[:, free] = on
        prob = np.where(on, pf, 1 - pf).prod(axis=1)
        yield present, prob.astype(float)


def _incidence(table: MotifTable) -> np.ndarray:
    inc = np.zeros((table.n_cliques, table.n_triangles), dtype=np.int64)
    for q, row in enumerate(table.clique_tris):
        inc[q, row] = 1
    return inc


def _key(h, t, idx=None) -> tuple[int, int, int]:
    if isinstance(t, (int, np.integer)):
        g = h.parent if isinstance(h, SubgraphView) else h
        return (idx or cached_index(g)).triangles[int(t)]
    return tuple(sorted(int(x) for x in t))
