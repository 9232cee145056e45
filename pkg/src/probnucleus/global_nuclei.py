"""Global and weakly-global nuclei grown from local ones.

Both searches are confined to the local nuclei at the same level ``k``.
Tail probabilities come from Monte-Carlo sampling (``estimator="mc"``) or,
on tiny inputs, from exhaustive enumeration (``estimator="oracle"``).
"""

from __future__ import annotations

import logging
from collections import deque
from typing import Literal

import numpy as np

from .deterministic import MotifTable, _quad_info, triangle_components
from .graph import ProbabilisticGraph, SubgraphView, induced_edge_subgraph
from .local import Nucleus, NucleusScores, assemble_nuclei, nucleus_from_triangles
from .motifs import TriangleIndex
from .oracle import OracleBudget, exact_tails
from .sampling import SamplingConfig, count_hits
from .support import TIE_TOL

log = logging.getLogger(__name__)

Estimator = Literal["mc", "oracle"]


def fg_decompose(g: ProbabilisticGraph, idx: TriangleIndex, scores: NucleusScores,
                 theta: float, cfg: SamplingConfig = SamplingConfig(), *,
                 estimator: Estimator = "mc", budget: OracleBudget = OracleBudget(),
                 keep_nonmaximal: bool = False, k: int | None = None) -> list[Nucleus]:
    """Global nuclei for every level ``1..k_max`` (or only level ``k``).

    For each seed triangle, the 4-cliques of the level-``k`` local nuclei
    that contain it are collected, and the set is closed until every
    collected triangle lies in ``k`` collected cliques. A candidate is kept
    when each of its triangles is estimated to sit, with probability at
    least ``theta``, in a world that is itself a deterministic k-nucleus.
    Worlds are judged on the candidate's own cliques and their faces;
    triangles or 4-cliques that its edges happen to close are ignored.
    Overlapping accepted candidates are then merged while their union still
    passes, and only maximal candidates are returned unless
    ``keep_nonmaximal`` is set.
    """
    _check(idx, g, theta, estimator)
    search = GlobalSearch(g, idx, theta, cfg, estimator, budget)
    out = []
    for level in _levels(scores, k):
        out.extend(search.level(scores, level, keep_nonmaximal))
    return out


def wg_decompose(g: ProbabilisticGraph, idx: TriangleIndex, scores: NucleusScores,
                 theta: float, cfg: SamplingConfig = SamplingConfig(), *,
                 estimator: Estimator = "mc", budget: OracleBudget = OracleBudget(),
                 k: int | None = None) -> list[Nucleus]:
    """Weakly-global nuclei for every level ``1..k_max`` (or only level ``k``).

    Within each local nucleus, a triangle qualifies when its deterministic
    nucleusness in a sampled world reaches ``k`` with estimated probability
    at least ``theta``. Qualifying triangles linked by 4-cliques whose four
    triangles all qualify form the output nuclei.
    """
    _check(idx, g, theta, estimator)
    out = []
    for level in _levels(scores, k):
        for local in assemble_nuclei(idx, scores, level):
            view = induced_edge_subgraph(g, local.edges)
            table = MotifTable.for_view(view, idx)
            tris = [idx.triangles[t] for t in local.triangles]
            if estimator == "oracle":
                prob = exact_tails(view, tris, level, "weakly-global", budget, idx)
                ok = {idx.id_of(t) for t, p in prob.items() if p >= theta - TIE_TOL}
            else:
                hits, n = count_hits(view, tris, level, "weakly-global", cfg, table=table)
                ok = {idx.id_of(t) for t, c in hits.items() if c / n >= theta}
            out.extend(_linked_groups(idx, table, ok, level, theta, "weakly-global"))
    return out


class GlobalSearch:
    """Candidate construction and acceptance for one graph and threshold.

    A candidate is a set of 4-cliques, kept as a sorted tuple of vertex
    quadruples. Its triangles are the faces of those cliques and its edges
    their edges.
    """

    def __init__(self, g, idx, theta, cfg, estimator, budget):
        self.g, self.idx, self.theta = g, idx, theta
        self.cfg, self.estimator, self.budget = cfg, estimator, budget
        self._verdicts: dict[tuple[int, tuple], bool] = {}

    def level(self, scores: NucleusScores, k: int, keep_nonmaximal: bool = False) -> list[Nucleus]:
        idx = self.idx
        members = sorted(t for t, s in scores.score.items() if s >= k)
        member_set = set(members)
        # 4-cliques of the level-k local nuclei, listed under each of their triangles
        tri_cliques: dict[int, list[tuple[int, int, int, int]]] = {t: [] for t in members}
        for t in members:
            for z in idx.profiles[t].ext_vertices:
                if all(o in member_set for o in idx.clique_triangles(t, z)):
                    tri_cliques[t].append(idx.clique_vertices(t, z))

        candidates: dict[tuple, None] = {}
        for seed in members:
            cliques = self._closure(seed, tri_cliques, k)
            if cliques:
                candidates[tuple(sorted(cliques))] = None

        accepted = [c for c in candidates if self.accepts(c, k)]
        pool = accepted if keep_nonmaximal else _maximal(self._merge(accepted, k))
        return sorted((self._nucleus(c, k) for c in pool), key=lambda n: (n.edges, n.triangles))

    def accepts(self, cliques: tuple, k: int) -> bool:
        key = (k, cliques)
        if key not in self._verdicts:
            self._verdicts[key] = self._evaluate(cliques, k)
        return self._verdicts[key]

    def _evaluate(self, cliques, k) -> bool:
        table = MotifTable.for_cliques(self.idx, cliques)
        view = SubgraphView(self.g, table.edge_mask)
        tris = [self.idx.triangles[t] for t in table.tri_ids]
        if self.estimator == "oracle":
            prob = exact_tails(view, tris, k, "global", self.budget, self.idx, table)
            ok = all(p >= self.theta - TIE_TOL for p in prob.values())
        else:
            hits, n = count_hits(view, tris, k, "global", self.cfg, table=table)
            ok = all(c / n >= self.theta for c in hits.values())
        log.debug("k=%d candidate with %d cliques: %s", k, len(cliques), "accept" if ok else "reject")
        return ok

    def _closure(self, seed, tri_cliques, k):
        """Cliques reached from ``seed`` by expanding triangles in fewer than ``k`` of them."""
        chosen: dict[tuple, None] = {}
        count: dict[int, int] = {}
        queue, expanded = deque([seed]), set()
        while queue:
            t = queue.popleft()
            if t in expanded or (t != seed and count.get(t, 0) >= k):
                continue
            expanded.add(t)
            for q in tri_cliques[t]:
                if q in chosen:
                    continue
                chosen[q] = None
                for f in self._face_ids(q):
                    count[f] = count.get(f, 0) + 1
                    if count[f] < k and f not in expanded:
                        queue.append(f)
        return list(chosen)

    def _face_ids(self, q) -> tuple[int, int, int, int]:
        return _quad_info(self.idx, q)[0]

    def _merge(self, accepted, k):
        """Grow accepted candidates by unions that share a triangle and still pass.

        Candidates are grouped by triangle overlap. A group whose full union
        passes collapses to that union; otherwise each member absorbs, in
        order, the overlapping members that keep it passing.
        """
        pool = list(dict.fromkeys(accepted))
        if len(pool) < 2:
            return pool
        tri_sets = [self._triangles(c) for c in pool]
        owner: dict[int, list[int]] = {}
        for i, ts in enumerate(tri_sets):
            for t in ts:
                owner.setdefault(t, []).append(i)
        links = [[i, j, j, j] for group in owner.values() for i, j in zip(group, group[1:])]
        labels = triangle_components(len(pool), np.array(links, dtype=np.int64).reshape(-1, 4))
        groups: dict[int, list[int]] = {}
        for i, lab in enumerate(labels):
            groups.setdefault(int(lab), []).append(i)

        out = []
        for members in groups.values():
            if len(members) == 1:
                out.append(pool[members[0]])
                continue
            union = tuple(sorted({q for i in members for q in pool[i]}))
            if self.accepts(union, k):
                out.append(union)
                continue
            for i in members:
                cur, cur_tris = pool[i], tri_sets[i]
                for j in members:
                    if j == i or set(pool[j]) <= set(cur) or not (cur_tris & tri_sets[j]):
                        continue
                    grown = tuple(sorted(set(cur) | set(pool[j])))
                    if self.accepts(grown, k):
                        cur, cur_tris = grown, self._triangles(grown)
                out.append(cur)
        return list(dict.fromkeys(out))

    def _triangles(self, cliques) -> set[int]:
        return {t for q in cliques for t in self._face_ids(q)}

    def _nucleus(self, cliques, k) -> Nucleus:
        g = self.g
        tris = sorted(self._triangles(cliques))
        edges = sorted({g.edge_id(a, b) for q in cliques for i, a in enumerate(q) for b in q[i + 1:]})
        verts = sorted({x for q in cliques for x in q})
        return Nucleus("global", k, self.theta, tuple(tris), tuple(edges), tuple(verts))


def _linked_groups(idx, table: MotifTable, ok: set[int], k, theta, mode) -> list[Nucleus]:
    if not ok:
        return []
    members = sorted(ok)
    pos = {t: i for i, t in enumerate(members)}
    links = [[pos[int(table.tri_ids[p])] for p in row] for row in table.clique_tris
             if all(int(table.tri_ids[p]) in pos for p in row)]
    links = np.array(links, dtype=np.int64).reshape(-1, 4)
    labels = triangle_components(len(members), links)
    linked = np.zeros(len(members), dtype=bool)
    linked[links.reshape(-1)] = True
    groups: dict[int, list[int]] = {}
    for i, t in enumerate(members):
        if linked[i]:   # a triangle outside every qualifying clique is not a union of 4-cliques
            groups.setdefault(int(labels[i]), []).append(t)
    out = [nucleus_from_triangles(idx, tris, k, theta, mode) for tris in groups.values()]
    return sorted(out, key=lambda n: n.edges)


def _maximal(pool):
    sets = [frozenset(c) for c in pool]
    return [c for c, s in zip(pool, sets) if not any(s < o for o in sets)]


def _levels(scores: NucleusScores, k: int | None):
    if k is not None:
        return [k] if 1 <= k <= scores.k_max else []
    return range(1, scores.k_max + 1)


def _check(idx, g, theta, estimator):
    if idx.graph is not g:
        raise ValueError("index was built for a different graph")
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    if estimator not in ("mc", "oracle"):
        raise ValueError(f"estimator must be 'mc' or 'oracle', got {estimator!r}")
