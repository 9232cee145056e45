"""Probabilistic graph model, edge-list ingestion and edge-subgraph views."""

from __future__ import annotations

import io
import math
import os
from bisect import bisect_left
from typing import IO, Iterable, Sequence

import numpy as np


class GraphInputError(ValueError):
    """Base class for malformed edge-list input."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ParseError(GraphInputError):
    pass


class DuplicateEdge(GraphInputError):
    pass


class BadProbability(GraphInputError):
    pass


class SelfLoop(GraphInputError):
    pass


class ProbabilisticGraph:
    """Immutable undirected graph whose edges exist independently.

    Vertices are stored as contiguous ids ``0..n-1``; ``labels[i]`` keeps the
    original label of internal vertex ``i``. Internal ids are assigned in
    ascending label order, so canonical orderings agree between the two.

    Edges are canonical ``(u, v)`` pairs with ``u < v``, sorted
    lexicographically; the position in that order is the edge id.
    """

    def __init__(self, n: int, edges: Sequence[tuple[int, int]], probs: Sequence[float],
                 labels: Sequence[int] | None = None):
        order = sorted(range(len(edges)), key=lambda i: _canon(*edges[i]))
        canon = [_canon(*edges[i]) for i in order]
        p = np.array([float(probs[i]) for i in order], dtype=float)
        for i, (u, v) in enumerate(canon):
            if u == v:
                raise SelfLoop(f"self-loop on vertex {u}")
            if not 0 <= u < n or not 0 <= v < n:
                raise IndexError(f"edge ({u}, {v}) outside vertex range 0..{n - 1}")
            if i and canon[i - 1] == (u, v):
                raise DuplicateEdge(f"duplicate edge ({u}, {v})")
        if p.size and not (np.all(p > 0) and np.all(p <= 1)):
            raise BadProbability("edge probabilities must lie in (0, 1]")

        self.n = int(n)
        self.edges: tuple[tuple[int, int], ...] = tuple(canon)
        self.probs = p
        self.probs.setflags(write=False)
        self.labels = tuple(range(n)) if labels is None else tuple(labels)
        if len(self.labels) != n:
            raise ValueError("labels must have one entry per vertex")

        self._edge_id = {e: i for i, e in enumerate(self.edges)}
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        self._nbrs = tuple(tuple(sorted(a)) for a in nbrs)
        self._nbr_sets = tuple(frozenset(a) for a in self._nbrs)

    @classmethod
    def from_edges(cls, triples: Iterable[tuple[int, int, float]]) -> "ProbabilisticGraph":
        """Build from ``(u, v, p)`` triples in an arbitrary integer labeling."""
        triples = [(int(u), int(v), float(p)) for u, v, p in triples]
        labels = sorted({x for u, v, _ in triples for x in (u, v)})
        remap = {lab: i for i, lab in enumerate(labels)}
        edges = [(remap[u], remap[v]) for u, v, _ in triples]
        return cls(len(labels), edges, [p for _, _, p in triples], labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> tuple[int, ...]:
        return self._nbrs[u]

    def neighbor_set(self, u: int) -> frozenset[int]:
        return self._nbr_sets[u]

    def degree(self, u: int) -> int:
        return len(self._nbrs[u])

    def adjacency(self, u: int) -> list[tuple[int, float]]:
        """Sorted ``(neighbor, probability)`` pairs of ``u``."""
        return [(v, self.prob(u, v)) for v in self._nbrs[u]]

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self._edge_id

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_id[_canon(u, v)]

    def prob(self, u: int, v: int) -> float:
        return float(self.probs[self._edge_id[_canon(u, v)]])

    def label_of(self, u: int) -> int:
        return self.labels[u]

    def vertex_of(self, label: int) -> int:
        """Internal id of an original vertex label."""
        i = bisect_left(self.labels, label)
        if i == self.n or self.labels[i] != label:
            raise KeyError(f"unknown vertex label {label}")
        return i

    def edge_triples(self) -> list[tuple[int, int, float]]:
        """Edges as ``(label_u, label_v, p)`` in the original labeling."""
        return [(self.labels[u], self.labels[v], float(p))
                for (u, v), p in zip(self.edges, self.probs)]

    def full_view(self) -> "SubgraphView":
        return SubgraphView(self, np.ones(self.m, dtype=bool))

    def __repr__(self) -> str:
        return f"ProbabilisticGraph(n={self.n}, m={self.m})"


class SubgraphView:
    """Edge subset of a parent graph; vertices are the endpoints of kept edges."""

    def __init__(self, parent: ProbabilisticGraph, edge_mask):
        mask = np.asarray(edge_mask, dtype=bool)
        if mask.shape != (parent.m,):
            raise ValueError(f"edge mask must have shape ({parent.m},)")
        self.parent = parent
        self.edge_mask = mask.copy()
        self.edge_mask.setflags(write=False)

    @property
    def edge_ids(self) -> np.ndarray:
        return np.flatnonzero(self.edge_mask)

    @property
    def m(self) -> int:
        return int(self.edge_mask.sum())

    @property
    def vertices(self) -> list[int]:
        return sorted({x for e in self.edge_ids for x in self.parent.edges[e]})

    @property
    def probs(self) -> np.ndarray:
        return self.parent.probs[self.edge_mask]

    def edges(self) -> list[tuple[int, int]]:
        return [self.parent.edges[e] for e in self.edge_ids]

    def edge_triples(self) -> list[tuple[int, int, float]]:
        g = self.parent
        return [(g.labels[u], g.labels[v], float(g.probs[e]))
                for e in self.edge_ids for u, v in [g.edges[e]]]

    def is_full(self) -> bool:
        return bool(self.edge_mask.all())

    def __len__(self) -> int:
        return self.m

    def __repr__(self) -> str:
        return f"SubgraphView(m={self.m} of {self.parent.m})"


def induced_edge_subgraph(g: ProbabilisticGraph, edges: Iterable[int]) -> SubgraphView:
    mask = np.zeros(g.m, dtype=bool)
    for e in edges:
        e = int(e)
        if not 0 <= e < g.m:
            raise IndexError(f"edge id {e} out of range for graph with {g.m} edges")
        mask[e] = True
    return SubgraphView(g, mask)


def vertex_induced_subgraph(g: ProbabilisticGraph, vertices: Iterable[int]) -> SubgraphView:
    """Edges of ``g`` with both endpoints in ``vertices`` (internal ids)."""
    keep = set(vertices)
    return induced_edge_subgraph(
        g, [i for i, (u, v) in enumerate(g.edges) if u in keep and v in keep])


def load_edge_list(source) -> ProbabilisticGraph:
    """Parse ``u v p`` lines into a graph.

    ``source`` may be a path, a binary or text stream, or raw bytes. Blank
    lines and ``#`` comments are skipped. Errors carry the 1-based line number.
    """
    triples = []
    seen: dict[tuple[int, int], int] = {}
    for lineno, line in enumerate(_lines(source), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"expected 'u v p', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"vertex ids must be integers, got {line!r}", lineno) from None
        try:
            p = float(parts[2])
        except ValueError:
            raise ParseError(f"probability is not a number: {parts[2]!r}", lineno) from None
        if u < 0 or v < 0:
            raise ParseError("vertex ids must be non-negative", lineno)
        if u == v:
            raise SelfLoop(f"self-loop on vertex {u}", lineno)
        if not (math.isfinite(p) and 0 < p <= 1):
            raise BadProbability(f"probability {parts[2]} not in (0, 1]", lineno)
        key = _canon(u, v)
        if key in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) already given on line {seen[key]}", lineno)
        seen[key] = lineno
        triples.append((u, v, p))
    return ProbabilisticGraph.from_edges(triples)


def dump_edge_list(g: ProbabilisticGraph | SubgraphView, stream: IO[str]) -> None:
    """Write ``u v p`` lines in original labels; ``repr`` keeps floats exact."""
    for u, v, p in g.edge_triples():
        stream.write(f"{u} {v} {p!r}\n")


def _lines(source):
    if isinstance(source, (bytes, bytearray)):
        yield from io.StringIO(bytes(source).decode("utf-8"), newline=None)
    elif isinstance(source, (str, os.PathLike)):
        with open(source, encoding="utf-8", newline=None) as fh:
            yield from fh
    else:
        for line in source:
            if isinstance(line, (bytes, bytearray)):
                line = bytes(line).decode("utf-8")
            yield line


def _canon(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)
