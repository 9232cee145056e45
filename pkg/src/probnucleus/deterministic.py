"""Deterministic (3,4)-nucleus machinery evaluated on possible worlds.

A world is an edge-presence mask over a host graph. Triangle and 4-clique
presence is decided from the mask against a :class:`MotifTable`, which
lists the triangles and 4-cliques that can appear inside a fixed edge
subset. One table serves any number of worlds of the same subgraph.
"""

from __future__ import annotations

import heapq

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .graph import ProbabilisticGraph, SubgraphView
from .motifs import TriangleIndex, cached_index


class MotifTable:
    """Triangles and 4-cliques whose edges all lie in an edge subset.

    Attributes
    ----------
    tri_ids : index ids of the triangles, ascending
    tri_edges : (T, 3) parent edge ids of each triangle
    clique_tris : (Q, 4) positions (into ``tri_ids``) of each clique's triangles
    clique_edges : (Q, 6) parent edge ids of each clique
    """

    def __init__(self, index: TriangleIndex, edge_mask=None):
        g = index.graph
        mask = np.ones(g.m, dtype=bool) if edge_mask is None else np.asarray(edge_mask, bool)
        tri_ids = []
        for tid in range(len(index)):
            es = index.triangle_edges(tid)
            if mask[es[0]] and mask[es[1]] and mask[es[2]]:
                tri_ids.append(tid)
        quads = []
        for tid in tri_ids:
            u, v, w = index.triangles[tid]
            for z in index.profiles[tid].ext_vertices:
                # enumerate each clique from its lowest triangle
                if z > w and mask[g.edge_id(u, z)] and mask[g.edge_id(v, z)] and mask[g.edge_id(w, z)]:
                    quads.append((u, v, w, z))
        self._fill(index, mask, tri_ids, quads)

    @classmethod
    def for_cliques(cls, index: TriangleIndex, quads) -> "MotifTable":
        """Table holding exactly the given 4-cliques (sorted vertex quadruples) and their faces.

        Triangles that the cliques' edges happen to close but that are not a
        face of any listed clique are left out.
        """
        g = index.graph
        quads = sorted({tuple(sorted(int(x) for x in q)) for q in quads})
        tri_ids = sorted({t for q in quads for t in _quad_info(index, q)[0]})
        mask = np.zeros(g.m, dtype=bool)
        for q in quads:
            mask[list(_quad_info(index, q)[1])] = True
        table = cls.__new__(cls)
        table._fill(index, mask, tri_ids, quads)
        return table

    def _fill(self, index, mask, tri_ids, quads):
        self.index = index
        self.edge_mask = mask
        self.quads = list(quads)
        self.tri_ids = np.array(tri_ids, dtype=np.int64)
        self.tri_edges = np.array([index.triangle_edges(t) for t in tri_ids],
                                  dtype=np.int64).reshape(-1, 3)
        self.position = {t: i for i, t in enumerate(tri_ids)}
        clique_tris, clique_edges = [], []
        for q in self.quads:
            faces, edges = _quad_info(index, q)
            clique_tris.append([self.position[t] for t in faces])
            clique_edges.append(edges)
        self.clique_tris = np.array(clique_tris, dtype=np.int64).reshape(-1, 4)
        self.clique_edges = np.array(clique_edges, dtype=np.int64).reshape(-1, 6)
        # cliques containing each triangle, for peeling
        self.tri_cliques: list[list[int]] = [[] for _ in tri_ids]
        for q, row in enumerate(self.clique_tris):
            for t in row:
                self.tri_cliques[t].append(q)

    @classmethod
    def for_view(cls, h: ProbabilisticGraph | SubgraphView,
                 index: TriangleIndex | None = None) -> "MotifTable":
        if isinstance(h, SubgraphView):
            g, mask = h.parent, h.edge_mask
        else:
            g, mask = h, None
        return cls(index if index is not None else cached_index(g), mask)

    @property
    def n_triangles(self) -> int:
        return len(self.tri_ids)

    @property
    def n_cliques(self) -> int:
        return len(self.clique_tris)

    def present(self, edge_present):
        """Boolean presence vectors of triangles and cliques for one world."""
        edge_present = np.asarray(edge_present, dtype=bool)
        return (edge_present[self.tri_edges].all(axis=1),
                edge_present[self.clique_edges].all(axis=1))


class WorldGraph:
    """A possible world: the parent's edges restricted to ``present``.

    ``present`` is a boolean mask over the edges of the underlying
    :class:`ProbabilisticGraph`; for a :class:`SubgraphView` parent it must
    not switch on edges outside the view.
    """

    def __init__(self, parent: ProbabilisticGraph | SubgraphView, present,
                 table: MotifTable | None = None):
        g = parent.parent if isinstance(parent, SubgraphView) else parent
        present = np.asarray(present, dtype=bool)
        if present.shape != (g.m,):
            raise ValueError(f"presence mask must have shape ({g.m},)")
        if isinstance(parent, SubgraphView) and np.any(present & ~parent.edge_mask):
            raise ValueError("world contains edges outside its parent subgraph")
        self.parent = parent
        self.graph = g
        self.present = present
        self.table = table if table is not None else MotifTable.for_view(parent)

    @property
    def index(self) -> TriangleIndex:
        return self.table.index

    def motifs(self):
        return self.table.present(self.present)


def det_scores(w: WorldGraph) -> dict[int, int]:
    """Deterministic nucleusness of every triangle present in ``w``."""
    tab = w.table
    tri_on, clq_on = w.motifs()
    scores = _peel(tab, tri_on, clq_on)
    return {int(tab.tri_ids[i]): s for i, s in scores.items()}


def is_k_nucleus(w: WorldGraph, k: int) -> bool:
    """Whether the whole world is a deterministic k-(3,4)-nucleus.

    Requires every present edge to lie in a present 4-clique, every present
    triangle to be in at least ``k`` present 4-cliques, and all present
    triangles to be linked through shared 4-cliques. An edgeless world is
    never a nucleus.
    """
    tab = w.table
    tri_on, clq_on = w.motifs()
    return _is_k_nucleus(tab, w.present & tab.edge_mask, tri_on, clq_on, k)


def max_k_nucleus_containing(w: WorldGraph, t) -> int | None:
    """Largest k such that some k-nucleus inside ``w`` contains ``t``."""
    tid = t if isinstance(t, (int, np.integer)) else w.index.id_of(t)
    pos = w.table.position.get(int(tid))
    if pos is None:
        return None
    tri_on, clq_on = w.motifs()
    if not tri_on[pos]:
        return None
    return _peel(w.table, tri_on, clq_on)[pos]


def triangle_components(n: int, groups: np.ndarray) -> np.ndarray:
    """Component label per node when each row of ``groups`` links its members."""
    groups = np.asarray(groups, dtype=np.int64).reshape(-1, 4)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    hub = np.repeat(groups[:, 0], 3)
    spokes = groups[:, 1:].reshape(-1)
    adj = coo_matrix((np.ones(len(hub), dtype=np.int8), (hub, spokes)), shape=(n, n))
    _, labels = connected_components(adj, directed=False)
    return labels


def _is_k_nucleus(tab: MotifTable, edges_on, tri_on, clq_on, k: int) -> bool:
    if not edges_on.any():
        return False
    cov = np.zeros_like(edges_on)
    cov[tab.clique_edges[clq_on].reshape(-1)] = True
    if np.any(edges_on & ~cov):
        return False
    live = tab.clique_tris[clq_on]
    support = np.bincount(live.reshape(-1), minlength=tab.n_triangles)
    if np.any(support[tri_on] < k):
        return False
    labels = triangle_components(tab.n_triangles, live)
    return len(np.unique(labels[tri_on])) == 1


def _peel(tab: MotifTable, tri_on, clq_on) -> dict[int, int]:
    """Min-support peeling over present motifs; returns position -> score."""
    support = np.bincount(tab.clique_tris[clq_on].reshape(-1),
                          minlength=tab.n_triangles).tolist()
    alive_clq = clq_on.copy()
    heap = [(support[i], i) for i in np.flatnonzero(tri_on)]
    heapq.heapify(heap)
    done: dict[int, int] = {}
    while heap:
        s, t = heapq.heappop(heap)
        if t in done or s != support[t]:
            continue
        done[t] = s
        for q in tab.tri_cliques[t]:
            if not alive_clq[q]:
                continue
            alive_clq[q] = False
            for other in tab.clique_tris[q]:
                other = int(other)
                if other != t and other not in done and support[other] > s:
                    support[other] -= 1
                    heapq.heappush(heap, (support[other], other))
    return done


def _faces(q):
    a, b, c, d = q
    return ((a, b, c), (a, b, d), (a, c, d), (b, c, d))


def _quad_info(index: TriangleIndex, q) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Face triangle ids and edge ids of a sorted 4-clique, memoised on the index."""
    cache = index.__dict__.setdefault("_quad_cache", {})
    info = cache.get(q)
    if info is None:
        g = index.graph
        info = cache[q] = (tuple(index.id_of(f) for f in _faces(q)),
                           tuple(g.edge_id(a, b) for i, a in enumerate(q) for b in q[i + 1:]))
    return info
