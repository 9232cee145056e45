"""Local nucleus decomposition by peeling triangles on their support tails."""

from __future__ import annotations

import heapq
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .graph import ProbabilisticGraph
from .motifs import ExtensionProfile, TriangleIndex
from .support import Hyperparams, dp_max_k, max_k, select_method
from .deterministic import triangle_components

Mode = Literal["local", "global", "weakly-global"]
Backend = Literal["exact", "hybrid"]


@dataclass
class NucleusScores:
    """Per-triangle nucleusness at a fixed ``theta``.

    ``score`` has an entry for every triangle that exists with probability at
    least ``theta``. ``initial`` holds the score before peeling and ``order``
    the finalization order of all triangles (excluded ones first).
    """

    theta: float
    score: dict[int, int]
    initial: dict[int, int] = field(default_factory=dict)
    order: list[int] = field(default_factory=list)

    @property
    def k_max(self) -> int:
        return max(self.score.values(), default=0)

    def get(self, tid: int) -> int | None:
        return self.score.get(tid)


@dataclass(frozen=True)
class Nucleus:
    mode: str
    k: int
    theta: float
    triangles: tuple[int, ...]
    edges: tuple[int, ...]
    vertices: tuple[int, ...]

    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)


def compute_scores(g: ProbabilisticGraph, idx: TriangleIndex, theta: float,
                   hp: Hyperparams = Hyperparams(), backend: Backend = "hybrid") -> NucleusScores:
    """Nucleusness of every triangle by repeated removal of the weakest one.

    A triangle's score starts as the largest ``k`` whose support tail clears
    ``theta``. The unprocessed triangle with the smallest score is finalized
    next; every 4-clique it belongs to is destroyed, and neighbours whose
    score exceeds it are rescored on their surviving extensions. Triangles
    that exist with probability below ``theta`` carry no score and are
    removed before everything else.
    """
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    if backend not in ("exact", "hybrid"):
        raise ValueError(f"backend must be 'exact' or 'hybrid', got {backend!r}")
    if idx.graph is not g:
        raise ValueError("index was built for a different graph")

    def rescore(profile: ExtensionProfile, cap: int | None) -> int | None:
        if backend == "exact":
            return dp_max_k(profile, theta, cap)
        k = max_k(profile, theta, select_method(profile, hp))
        return k if k is None or cap is None else min(k, cap)

    T = len(idx)
    kappa: list[int] = [0] * T
    initial: dict[int, int] = {}
    for t, prof in enumerate(idx.profiles):
        k = rescore(prof, None)
        kappa[t] = -1 if k is None else k
        if k is not None:
            initial[t] = k

    alive = [[True] * p.count for p in idx.profiles]
    processed = [False] * T
    score: dict[int, int] = {}
    order: list[int] = []
    queue = _BucketQueue(kappa)

    while queue:
        t, k_t = queue.pop_min()
        processed[t] = True
        order.append(t)
        if k_t >= 0:
            score[t] = k_t
        u, v, w = idx.triangles[t]
        for z in idx.profiles[t].ext_vertices:
            four = idx.clique_triangles(t, z)
            if any(processed[o] for o in four if o != t):
                continue   # clique already destroyed
            for o in four:
                if o == t:
                    continue
                # the extension of ``o`` inside this clique is the vertex of t missing from o
                ou, ov, ow = idx.triangles[o]
                zo = ({u, v, w} - {ou, ov, ow}).pop()
                prof = idx.profiles[o]
                alive[o][bisect_left(prof.ext_vertices, zo)] = False
                if kappa[o] > k_t:
                    reduced = _surviving(prof, alive[o])
                    new = rescore(reduced, kappa[o])
                    new = -1 if new is None else new
                    # never below the level being peeled, never above the old value
                    new = min(kappa[o], max(new, k_t))
                    if new != kappa[o]:
                        kappa[o] = new
                        queue.update(o, new)
    return NucleusScores(theta, score, initial, order)


def assemble_nuclei(idx: TriangleIndex, scores: NucleusScores, k: int,
                    mode: str = "local") -> list[Nucleus]:
    """Connected groups of triangles with score at least ``k``.

    Two triangles are linked when they share a 4-clique whose four triangles
    all reach ``k``. Only ``k >= 1`` yields nuclei.
    """
    if k < 1:
        return []
    members = sorted(t for t, s in scores.score.items() if s >= k)
    if not members:
        return []
    pos = {t: i for i, t in enumerate(members)}
    links = []
    for t in members:
        u, v, w = idx.triangles[t]
        for z in idx.profiles[t].ext_vertices:
            if z < w:
                continue
            four = idx.clique_triangles(t, z)
            if all(o in pos for o in four):
                links.append([pos[o] for o in four])
    labels = triangle_components(len(members), np.array(links, dtype=np.int64).reshape(-1, 4))
    groups: dict[int, list[int]] = {}
    for t, lab in zip(members, labels):
        groups.setdefault(int(lab), []).append(t)
    out = [nucleus_from_triangles(idx, tris, k, scores.theta, mode) for tris in groups.values()]
    out.sort(key=lambda n: n.edges)
    return out


def all_nuclei(idx: TriangleIndex, scores: NucleusScores, mode: str = "local") -> list[Nucleus]:
    out = []
    for k in range(scores.k_max, 0, -1):
        out.extend(assemble_nuclei(idx, scores, k, mode))
    return out


def nucleus_from_triangles(idx: TriangleIndex, triangles, k: int, theta: float,
                           mode: str) -> Nucleus:
    tris = tuple(sorted(int(t) for t in triangles))
    edges = sorted({e for t in tris for e in idx.triangle_edges(t)})
    verts = sorted({x for t in tris for x in idx.triangles[t]})
    return Nucleus(mode, k, theta, tris, tuple(edges), tuple(verts))


def _surviving(prof: ExtensionProfile, alive: list[bool]) -> ExtensionProfile:
    return ExtensionProfile(prof.tri_prob,
                            tuple(p for p, a in zip(prof.ext_probs, alive) if a),
                            tuple(z for z, a in zip(prof.ext_vertices, alive) if a))


class _BucketQueue:
    """Min-priority queue over small integer keys with lowest-id tie-break.

    Buckets are heaps of ids; stale entries are skipped on pop. Keys only
    decrease, and never below the key last popped.
    """

    def __init__(self, keys: list[int]):
        self.keys = list(keys)
        self.offset = 1   # key -1 marks excluded triangles
        top = max(self.keys, default=0)
        self.buckets: list[list[int]] = [[] for _ in range(top + 2)]
        for i, k in enumerate(self.keys):
            self.buckets[k + self.offset].append(i)
        self.cur = 0
        self.left = len(self.keys)
        self.done = [False] * len(self.keys)

    def __bool__(self) -> bool:
        return self.left > 0

    def update(self, i: int, key: int) -> None:
        self.keys[i] = key
        heapq.heappush(self.buckets[key + self.offset], i)

    def pop_min(self) -> tuple[int, int]:
        while True:
            bucket = self.buckets[self.cur]
            while bucket:
                i = heapq.heappop(bucket)
                if not self.done[i] and self.keys[i] + self.offset == self.cur:
                    self.done[i] = True
                    self.left -= 1
                    return i, self.keys[i]
            self.cur += 1
