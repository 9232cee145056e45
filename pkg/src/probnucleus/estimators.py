"""Scikit-learn style front ends for the three decompositions.

Each estimator is fitted on one probabilistic graph (a graph object, an
edge-list path, or an ``(m, 3)`` array of ``u, v, p`` rows) and exposes the
nuclei it found. ``transform`` maps a graph to per-triangle nucleusness in
the order of the graph's triangle index, with NaN for triangles outside
every nucleus of the requested kind.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .global_nuclei import fg_decompose, wg_decompose
from .local import Nucleus, all_nuclei, compute_scores
from .motifs import cached_index
from .oracle import OracleBudget
from .sampling import SamplingConfig
from .support import Hyperparams
from .validation import check_graph, check_probability, check_seed


class LocalNucleusDecomposition(BaseEstimator):
    """Local (3,4)-nucleus decomposition at threshold ``theta``.

    Parameters
    ----------
    theta : float in (0, 1]
    backend : {"hybrid", "exact"}
        ``exact`` uses dynamic programming for every triangle; ``hybrid``
        picks a cheaper approximation per triangle when it applies.
    hyperparams : Hyperparams, optional
        Approximation-selection thresholds; defaults to ``Hyperparams()``.

    Attributes
    ----------
    graph_, index_ : the fitted graph and its triangle index
    scores_ : NucleusScores
    nuclei_ : list of Nucleus, every level from ``k_max_`` down to 1
    k_max_ : int
    """

    def __init__(self, theta=0.5, backend="hybrid", hyperparams=None):
        self.theta = theta
        self.backend = backend
        self.hyperparams = hyperparams

    def fit(self, X, y=None):
        theta = check_probability(self.theta, "theta")
        if self.backend not in ("exact", "hybrid"):
            raise ValueError(f"backend must be 'exact' or 'hybrid', got {self.backend!r}")
        self.graph_ = check_graph(X)
        self.index_ = cached_index(self.graph_)
        self.scores_ = compute_scores(self.graph_, self.index_, theta,
                                      self.hyperparams or Hyperparams(), self.backend)
        self.nuclei_ = all_nuclei(self.index_, self.scores_)
        self.k_max_ = self.scores_.k_max
        return self

    def transform(self, X=None):
        est = self._fitted_for(X)
        out = np.full(len(est.index_), np.nan)
        for t, s in est.scores_.score.items():
            out[t] = s
        return out

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    def nuclei_at(self, k: int) -> list[Nucleus]:
        check_is_fitted(self, "nuclei_")
        return [n for n in self.nuclei_ if n.k == k]

    def _fitted_for(self, X):
        if X is None:
            check_is_fitted(self, "scores_")
            return self
        return type(self)(**self.get_params()).fit(X)


class _SampledDecomposition(BaseEstimator):
    def __init__(self, theta=0.5, epsilon=0.1, delta=0.1, n_samples=None,
                 random_state=None, backend="hybrid", hyperparams=None,
                 estimator="mc", max_oracle_edges=20, n_jobs=1):
        self.theta = theta
        self.epsilon = epsilon
        self.delta = delta
        self.n_samples = n_samples
        self.random_state = random_state
        self.backend = backend
        self.hyperparams = hyperparams
        self.estimator = estimator
        self.max_oracle_edges = max_oracle_edges
        self.n_jobs = n_jobs

    def fit(self, X, y=None):
        theta = check_probability(self.theta, "theta")
        self.local_ = LocalNucleusDecomposition(theta, self.backend, self.hyperparams).fit(X)
        self.graph_, self.index_ = self.local_.graph_, self.local_.index_
        self.sampling_ = SamplingConfig(
            epsilon=self.epsilon, delta=self.delta, n_override=self.n_samples,
            base_seed=check_seed(self.random_state), n_jobs=self.n_jobs)
        self.nuclei_ = self._decompose(theta, OracleBudget(self.max_oracle_edges))
        self.k_max_ = max((n.k for n in self.nuclei_), default=0)
        return self

    def transform(self, X=None):
        est = self if X is None else type(self)(**self.get_params()).fit(X)
        check_is_fitted(est, "nuclei_")
        out = np.full(len(est.index_), np.nan)
        for n in est.nuclei_:
            tris = list(n.triangles)
            out[tris] = np.fmax(out[tris], n.k)
        return out

    def fit_transform(self, X, y=None):
        return self.fit(X).transform()

    def nuclei_at(self, k: int) -> list[Nucleus]:
        check_is_fitted(self, "nuclei_")
        return [n for n in self.nuclei_ if n.k == k]


class GlobalNucleusDecomposition(_SampledDecomposition):
    """Global nuclei: sampled worlds of a candidate must themselves be nuclei.

    Accepts the parameters of :class:`LocalNucleusDecomposition` plus the
    sampling controls ``epsilon``, ``delta``, ``n_samples`` (overrides the
    Hoeffding count), ``random_state`` and ``n_jobs``. ``estimator="oracle"``
    replaces sampling by exhaustive enumeration for graphs of at most
    ``max_oracle_edges`` edges per candidate. ``keep_nonmaximal`` returns
    every accepted candidate instead of the maximal ones.
    """

    def __init__(self, theta=0.5, epsilon=0.1, delta=0.1, n_samples=None,
                 random_state=None, backend="hybrid", hyperparams=None,
                 estimator="mc", max_oracle_edges=20, n_jobs=1, keep_nonmaximal=False):
        super().__init__(theta, epsilon, delta, n_samples, random_state, backend,
                         hyperparams, estimator, max_oracle_edges, n_jobs)
        self.keep_nonmaximal = keep_nonmaximal

    def _decompose(self, theta, budget):
        return fg_decompose(self.graph_, self.index_, self.local_.scores_, theta,
                            self.sampling_, estimator=self.estimator, budget=budget,
                            keep_nonmaximal=self.keep_nonmaximal)


class WeaklyGlobalNucleusDecomposition(_SampledDecomposition):
    """Weakly-global nuclei: triangles must lie in some nucleus of sampled worlds.

    Same parameters as :class:`GlobalNucleusDecomposition` minus
    ``keep_nonmaximal``.
    """

    def _decompose(self, theta, budget):
        return wg_decompose(self.graph_, self.index_, self.local_.scores_, theta,
                            self.sampling_, estimator=self.estimator, budget=budget)
