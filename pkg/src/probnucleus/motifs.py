"""Triangle enumeration and 4-clique extension profiles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import ProbabilisticGraph

Triangle = tuple[int, int, int]


@dataclass(frozen=True)
class ExtensionProfile:
    """A triangle's own existence probability and its 4-clique extensions.

    ``ext_probs[i]`` is the probability that all three edges joining the
    triangle to ``ext_vertices[i]`` exist. The extension edge sets are
    pairwise disjoint and disjoint from the triangle's edges, so the
    extensions are independent Bernoulli events.
    """

    tri_prob: float
    ext_probs: tuple[float, ...] = ()
    ext_vertices: tuple[int, ...] = ()

    @property
    def count(self) -> int:
        return len(self.ext_probs)

    @property
    def mean(self) -> float:
        return sum(self.ext_probs)

    @property
    def variance(self) -> float:
        return sum(p * (1.0 - p) for p in self.ext_probs)

    def without(self, positions) -> "ExtensionProfile":
        drop = set(positions)
        keep = [i for i in range(self.count) if i not in drop]
        return ExtensionProfile(self.tri_prob,
                                tuple(self.ext_probs[i] for i in keep),
                                tuple(self.ext_vertices[i] for i in keep) if self.ext_vertices else ())


class TriangleIndex:
    """All triangles of a graph with their extension profiles.

    Triangle ids follow the lexicographic order of the canonical vertex
    triples ``(u, v, w)``, ``u < v < w``, and stay fixed for the lifetime of
    the index. Extension vertices are kept in ascending order.
    """

    def __init__(self, graph: ProbabilisticGraph):
        self.graph = graph
        self.triangles: tuple[Triangle, ...] = tuple(sorted(_enumerate_triangles(graph)))
        self._id = {t: i for i, t in enumerate(self.triangles)}
        self.profiles: tuple[ExtensionProfile, ...] = tuple(
            _profile(graph, t) for t in self.triangles)

    def __len__(self) -> int:
        return len(self.triangles)

    def __iter__(self) -> Iterator[Triangle]:
        return iter(self.triangles)

    def __contains__(self, t) -> bool:
        return tuple(sorted(t)) in self._id

    def id_of(self, t) -> int:
        key = tuple(sorted(t))
        try:
            return self._id[key]
        except KeyError:
            raise IndexError(f"{key} is not a triangle of the indexed graph") from None

    def profile(self, t) -> ExtensionProfile:
        return self.profiles[self._resolve(t)]

    def triangle_edges(self, tid: int) -> tuple[int, int, int]:
        u, v, w = self.triangles[tid]
        g = self.graph
        return g.edge_id(u, v), g.edge_id(u, w), g.edge_id(v, w)

    def clique_triangles(self, tid: int, z: int) -> tuple[int, int, int, int]:
        """Ids of the four triangles of the 4-clique ``triangle(tid) + {z}``."""
        u, v, w = self.triangles[tid]
        return tuple(sorted((tid, self._id[_sorted3(u, v, z)],
                             self._id[_sorted3(u, w, z)], self._id[_sorted3(v, w, z)])))

    def clique_vertices(self, tid: int, z: int) -> tuple[int, int, int, int]:
        return tuple(sorted(self.triangles[tid] + (z,)))

    def cliques(self) -> Iterator[tuple[int, int, int, int]]:
        """Each 4-clique once, as a sorted vertex quadruple."""
        for tid, (u, v, w) in enumerate(self.triangles):
            for z in self.profiles[tid].ext_vertices:
                if z > w:
                    yield (u, v, w, z)

    def neighbor_triangles(self, t) -> list[tuple[int, tuple[int, int, int, int]]]:
        """Triangles sharing a 4-clique with ``t``.

        Returns ``(triangle_id, clique)`` pairs, the clique given as its
        sorted vertex quadruple, in ascending extension-vertex order.
        """
        tid = self._resolve(t)
        out = []
        for z in self.profiles[tid].ext_vertices:
            clique = self.clique_vertices(tid, z)
            for other in self.clique_triangles(tid, z):
                if other != tid:
                    out.append((other, clique))
        return out

    def _resolve(self, t) -> int:
        if isinstance(t, (int,)) and not isinstance(t, bool):
            if not 0 <= t < len(self.triangles):
                raise IndexError(f"triangle id {t} out of range")
            return t
        return self.id_of(t)


def build_index(g: ProbabilisticGraph) -> TriangleIndex:
    return TriangleIndex(g)


def cached_index(g: ProbabilisticGraph) -> TriangleIndex:
    """Index of ``g``, built once per graph object (graphs are immutable)."""
    idx = getattr(g, "_triangle_index", None)
    if idx is None:
        idx = TriangleIndex(g)
        g._triangle_index = idx
    return idx


def neighbor_triangles(idx: TriangleIndex, t) -> list[Triangle]:
    """Distinct triangles forming a 4-clique with ``t``."""
    seen = dict.fromkeys(other for other, _ in idx.neighbor_triangles(t))
    return [idx.triangles[i] for i in seen]


def _enumerate_triangles(g: ProbabilisticGraph) -> Iterator[Triangle]:
    # orient every edge towards the endpoint of higher (degree, id) rank;
    # each triangle is then found exactly once from its lowest-ranked vertex
    rank = sorted(range(g.n), key=lambda x: (g.degree(x), x))
    pos = [0] * g.n
    for i, x in enumerate(rank):
        pos[x] = i
    out = [frozenset(y for y in g.neighbors(x) if pos[y] > pos[x]) for x in range(g.n)]
    for u in range(g.n):
        for v in out[u]:
            for w in out[u] & out[v]:
                yield _sorted3(u, v, w)


def _profile(g: ProbabilisticGraph, t: Triangle) -> ExtensionProfile:
    u, v, w = t
    tri_prob = g.prob(u, v) * g.prob(u, w) * g.prob(v, w)
    common = sorted(g.neighbor_set(u) & g.neighbor_set(v) & g.neighbor_set(w))
    probs = tuple(g.prob(u, z) * g.prob(v, z) * g.prob(w, z) for z in common)
    return ExtensionProfile(tri_prob, probs, tuple(common))


def _sorted3(a: int, b: int, c: int) -> Triangle:
    if a > b:
        a, b = b, a
    if b > c:
        b, c = c, b
        if a > b:
            a, b = b, a
    return (a, b, c)
