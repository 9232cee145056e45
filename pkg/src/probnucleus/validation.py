"""Input checks shared by the estimators and the command line."""

from __future__ import annotations

import numbers
import os

import numpy as np

from .graph import ProbabilisticGraph, load_edge_list


def check_graph(X) -> ProbabilisticGraph:
    """Coerce ``X`` to a :class:`ProbabilisticGraph`.

    Accepts a graph, a path to an edge-list file, raw edge-list bytes, or an
    array-like of shape ``(m, 3)`` holding ``u, v, p`` rows.
    """
    if isinstance(X, ProbabilisticGraph):
        return X
    if isinstance(X, (str, os.PathLike, bytes, bytearray)):
        return load_edge_list(X)
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected an (m, 3) array of u, v, p rows, got shape {arr.shape}")
    uv = arr[:, :2]
    if not np.all(np.isfinite(uv)) or np.any(uv != np.round(uv)):
        raise ValueError("vertex ids must be integers")
    return ProbabilisticGraph.from_edges(
        (int(u), int(v), float(p)) for u, v, p in arr)


def check_probability(value, name: str, *, closed_low: bool = False) -> float:
    """Return ``value`` as a float in ``(0, 1]`` (``[0, 1]`` if ``closed_low``)."""
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise TypeError(f"{name} must be a real number, got {type(value).__name__}")
    value = float(value)
    low_ok = value >= 0 if closed_low else value > 0
    if not (low_ok and value <= 1):
        raise ValueError(f"{name} must lie in {'[' if closed_low else '('}0, 1], got {value}")
    return value


def check_seed(seed) -> int:
    if seed is None:
        return 0
    if isinstance(seed, numbers.Integral) and not isinstance(seed, bool):
        return int(seed)
    raise TypeError(f"random_state must be an int or None, got {type(seed).__name__}")
