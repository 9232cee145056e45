"""Possible-world sampling and Monte-Carlo tail estimates."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .deterministic import MotifTable, WorldGraph, _is_k_nucleus, _peel
from .graph import ProbabilisticGraph, SubgraphView
from .motifs import TriangleIndex

DEFAULT_MIN_SAMPLES = 200


class DomainError(ValueError):
    pass


def required_samples(epsilon: float, delta: float) -> int:
    """Smallest ``n`` with ``2 exp(-2 n eps^2) <= delta`` (Hoeffding)."""
    for name, x in (("epsilon", epsilon), ("delta", delta)):
        if not (isinstance(x, (int, float)) and 0 < x <= 1):
            raise DomainError(f"{name} must lie in (0, 1], got {x!r}")
    raw = math.log(2.0 / delta) / (2.0 * epsilon * epsilon)
    near = round(raw)
    # absorb rounding noise so exact integers do not tip over to the next one
    if abs(raw - near) <= 1e-9 * max(1.0, raw):
        return max(int(near), 1)
    return max(math.ceil(raw), 1)


@dataclass(frozen=True)
class SamplingConfig:
    """Sample-size and seeding parameters for Monte-Carlo estimates.

    Unless ``n_override`` is given, the sample count is the Hoeffding bound
    for ``(epsilon, delta)`` raised to at least ``min_samples``.
    """

    epsilon: float = 0.1
    delta: float = 0.1
    n_override: int | None = None
    base_seed: int = 0
    min_samples: int = DEFAULT_MIN_SAMPLES
    n_jobs: int = 1

    def __post_init__(self):
        required_samples(self.epsilon, self.delta)
        if self.n_override is not None and self.n_override < 1:
            raise DomainError("n_override must be a positive integer")
        if self.n_jobs < 1:
            raise DomainError("n_jobs must be at least 1")

    @property
    def n_samples(self) -> int:
        if self.n_override is not None:
            return int(self.n_override)
        return max(required_samples(self.epsilon, self.delta), self.min_samples)


def sample_presence(h: ProbabilisticGraph | SubgraphView, sample_index: int,
                    cfg: SamplingConfig) -> np.ndarray:
    """Edge-presence mask of one sampled world of ``h``.

    The random stream is keyed by ``(base_seed, sample_index)`` alone, so a
    sample does not depend on which other samples were drawn or in what
    order. Draws are consumed in ascending parent-edge order.
    """
    g, mask = (h.parent, h.edge_mask) if isinstance(h, SubgraphView) else (h, None)
    eids = np.arange(g.m) if mask is None else np.flatnonzero(mask)
    rng = np.random.default_rng([int(cfg.base_seed) & (2**64 - 1), int(sample_index)])
    draws = rng.random(len(eids))
    present = np.zeros(g.m, dtype=bool)
    present[eids] = draws < g.probs[eids]
    return present


def sample_world(h: ProbabilisticGraph | SubgraphView, sample_index: int,
                 cfg: SamplingConfig, table: MotifTable | None = None) -> WorldGraph:
    return WorldGraph(h, sample_presence(h, sample_index, cfg), table)


def estimate_tails(h: ProbabilisticGraph | SubgraphView, triangles: Iterable, k: int,
                   mode: str, cfg: SamplingConfig,
                   index: TriangleIndex | None = None) -> dict[tuple[int, int, int], float]:
    """Fraction of sampled worlds in which each triangle meets the ``mode`` indicator.

    ``global``: the triangle is present and the whole world is a k-nucleus.
    ``weakly-global``: the triangle's deterministic nucleusness in the world
    is at least ``k``. One set of ``cfg.n_samples`` worlds serves all
    triangles.
    """
    hits, n = count_hits(h, triangles, k, mode, cfg, index)
    return {t: c / n for t, c in hits.items()}


def count_hits(h, triangles: Iterable, k: int, mode: str, cfg: SamplingConfig,
               index: TriangleIndex | None = None, table: MotifTable | None = None):
    """Integer hit counts behind :func:`estimate_tails`; returns ``(hits, n)``."""
    if mode not in ("global", "weakly-global"):
        raise ValueError(f"mode must be 'global' or 'weakly-global', got {mode!r}")
    view = h if isinstance(h, SubgraphView) else h.full_view()
    table = table if table is not None else MotifTable.for_view(view, index)
    idx = table.index
    keys = [tuple(sorted(int(x) for x in t)) for t in triangles]
    pos = np.array([table.position[idx.id_of(key)] for key in keys], dtype=np.int64)
    n = cfg.n_samples

    view_edges = view.edge_ids

    def credit(present) -> np.ndarray:
        tri_on, clq_on = table.present(present)
        if mode == "global":
            if _is_k_nucleus(table, present & table.edge_mask, tri_on, clq_on, k):
                return tri_on[pos].astype(np.int64)
            return np.zeros(len(pos), dtype=np.int64)
        if not tri_on[pos].any():
            return np.zeros(len(pos), dtype=np.int64)
        scores = _peel(table, tri_on, clq_on)
        return np.array([scores.get(int(p), -1) >= k for p in pos], dtype=np.int64)

    def run(lo: int, hi: int) -> np.ndarray:
        # identical worlds recur often on small or near-certain subgraphs
        seen: dict[bytes, np.ndarray] = {}
        acc = np.zeros(len(keys), dtype=np.int64)
        for i in range(lo, hi):
            present = sample_presence(view, i, cfg)
            key = np.packbits(present[view_edges]).tobytes()
            hit = seen.get(key)
            if hit is None:
                hit = seen[key] = credit(present)
            acc += hit
        return acc

    jobs = min(cfg.n_jobs, n)
    if jobs <= 1:
        total = run(0, n)
    else:
        bounds = np.linspace(0, n, jobs + 1).astype(int)
        with ThreadPoolExecutor(jobs) as pool:
            parts = list(pool.map(run, bounds[:-1], bounds[1:]))
        total = np.sum(parts, axis=0)
    return dict(zip(keys, total.tolist())), n
