"""Distribution of a triangle's 4-clique support count.

The number of realized extensions of a triangle is a sum of independent
Bernoulli variables (a Poisson-binomial variable). Its tail, multiplied by
the triangle's own existence probability, is the probability that the
triangle exists with at least ``k`` supporting 4-cliques. This module
computes that tail exactly by dynamic programming, or approximately with a
Poisson, translated Poisson, normal or binomial law, and answers "largest
``k`` whose tail clears ``theta``" queries.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import gammaln

from .motifs import ExtensionProfile

# Slack on ``tail >= theta`` comparisons so that ties computed through
# different float paths resolve the same way.
TIE_TOL = 1e-12


class ApproxMethod(str, enum.Enum):
    DP = "dp"
    POISSON = "poisson"
    TRANSLATED_POISSON = "translated_poisson"
    CLT = "clt"
    BINOMIAL = "binomial"


@dataclass(frozen=True)
class Hyperparams:
    """Thresholds driving :func:`select_method`.

    A: extension count from which the normal approximation is used.
    B: extension count below which Poisson may be used.
    C: Poisson requires every extension probability below this.
    D: minimal variance ratio for the binomial approximation.
    """

    A: int = 200
    B: int = 100
    C: float = 0.25
    D: float = 0.9

    def __post_init__(self):
        if not (isinstance(self.A, int) and isinstance(self.B, int)):
            raise TypeError("A and B must be integers")
        if not self.A > self.B > 0:
            raise ValueError(f"need A > B > 0, got A={self.A}, B={self.B}")
        if not 0 < self.C < 1:
            raise ValueError(f"C must lie in (0, 1), got {self.C}")
        if not 0 < self.D <= 1:
            raise ValueError(f"D must lie in (0, 1], got {self.D}")

    @classmethod
    def parse(cls, text: str) -> "Hyperparams":
        """Parse ``"A,B,C,D"``."""
        parts = [s.strip() for s in text.split(",")]
        if len(parts) != 4:
            raise ValueError(f"expected A,B,C,D, got {text!r}")
        return cls(int(parts[0]), int(parts[1]), float(parts[2]), float(parts[3]))


class SupportDistribution:
    """``probs[k] = Pr(triangle exists and exactly k extensions exist)``.

    The entries sum to the triangle's existence probability, not to one.
    """

    def __init__(self, probs):
        self.probs = np.asarray(probs, dtype=float)
        # suffix sums from the top keep small tails accurate
        self._tail = np.append(np.cumsum(self.probs[::-1])[::-1], 0.0)

    def __len__(self) -> int:
        return len(self.probs)

    def pmf(self, k: int) -> float:
        return float(self.probs[k]) if 0 <= k < len(self.probs) else 0.0

    def tail(self, k: int) -> float:
        """``Pr(X >= k)``."""
        if k <= 0:
            return float(self._tail[0])
        return float(self._tail[min(k, len(self.probs))])

    def max_k(self, theta: float) -> int | None:
        return _scan(self.tail, len(self.probs) - 1, theta)


def dp_distribution(profile: ExtensionProfile) -> SupportDistribution:
    """Exact support distribution via the extension-by-extension recursion."""
    row = np.zeros(profile.count + 1)
    row[0] = 1.0
    for j, p in enumerate(profile.ext_probs, start=1):
        # row[k] <- p * row[k-1] + (1-p) * row[k], for k = 0..j
        row[1:j + 1] = p * row[:j] + (1.0 - p) * row[1:j + 1]
        row[0] *= 1.0 - p
    return SupportDistribution(profile.tri_prob * row)


def dp_max_k(profile: ExtensionProfile, theta: float, cap: int | None = None) -> int | None:
    """Largest ``k <= cap`` with exact tail ``>= theta``.

    Only ``cap + 1`` probabilities are kept per row: entries ``0..cap-1`` are
    exact point masses and the last entry holds ``Pr(count >= cap)``.
    """
    if profile.tri_prob < theta - TIE_TOL:
        return None
    c = profile.count
    cap = c if cap is None else min(cap, c)
    if cap <= 0:
        return 0
    row = [1.0] + [0.0] * cap
    for p in profile.ext_probs:
        q = 1.0 - p
        row[cap] += p * row[cap - 1]
        for k in range(cap - 1, 0, -1):
            row[k] = p * row[k - 1] + q * row[k]
        row[0] *= q
    tri = profile.tri_prob
    tail = row[cap]
    k = cap
    while k > 0 and tri * tail < theta - TIE_TOL:
        k -= 1
        tail += row[k]
    return k


def poisson_max_k(profile: ExtensionProfile, theta: float) -> int | None:
    """Poisson approximation with rate equal to the mean extension count."""
    lam = profile.mean
    tail = _shifted_poisson_tail(lam, 0, profile.count)
    return _scan_profile(profile, theta, tail)


def translated_poisson_max_k(profile: ExtensionProfile, theta: float) -> int | None:
    """Poisson shifted by ``floor(mean - variance)`` to match both moments."""
    lam = profile.mean
    shift = math.floor(sum(p * p for p in profile.ext_probs))
    tail = _shifted_poisson_tail(lam - shift, shift, profile.count)
    return _scan_profile(profile, theta, tail)


def clt_max_k(profile: ExtensionProfile, theta: float) -> int | None:
    """Normal approximation ``Pr(count >= k) ~ 1 - Phi((k - mean) / sd)``."""
    mu = profile.mean
    sd = math.sqrt(profile.variance)
    if sd == 0.0:
        tail = [1.0 if k <= mu + 1e-9 else 0.0 for k in range(profile.count + 1)]
    else:
        tail = [0.5 * math.erfc((k - mu) / (sd * math.sqrt(2.0)))
                for k in range(profile.count + 1)]
    return _scan_profile(profile, theta, tail)


def binomial_max_k(profile: ExtensionProfile, theta: float) -> int | None:
    """Binomial law with ``n = count`` trials and matching mean."""
    n = profile.count
    if n == 0:
        return _scan_profile(profile, theta, [1.0])
    p = min(profile.mean / n, 1.0)
    if p >= 1.0:
        pmf = [0.0] * n + [1.0]
    elif p <= 0.0:
        pmf = [1.0] + [0.0] * n
    else:
        # pmf[k] = pmf[k-1] * (n-k+1) p / (k (1-p)), carried in log space
        # so long rows do not underflow at k = 0
        step = math.log(p) - math.log1p(-p)
        logs = [n * math.log1p(-p)]
        for k in range(1, n + 1):
            logs.append(logs[-1] + math.log(n - k + 1) - math.log(k) + step)
        top = max(logs)
        pmf = [math.exp(x - top) for x in logs]
        total = math.fsum(pmf)
        pmf = [x / total for x in pmf]
    tail = np.cumsum(pmf[::-1])[::-1].tolist()
    return _scan_profile(profile, theta, tail)


def select_method(profile: ExtensionProfile, hp: Hyperparams = Hyperparams()) -> ApproxMethod:
    """Pick the approximation for one triangle from its extension profile."""
    c = profile.count
    probs = profile.ext_probs
    if c >= hp.A:
        return ApproxMethod.CLT
    if c < hp.B and all(p < hp.C for p in probs):
        return ApproxMethod.POISSON
    if sum(p * p for p in probs) > 1.0:
        return ApproxMethod.TRANSLATED_POISSON
    if variance_ratio(probs) >= hp.D:
        return ApproxMethod.BINOMIAL
    return ApproxMethod.DP


def variance_ratio(ext_probs: Sequence[float]) -> float:
    """Poisson-binomial variance over the matching binomial variance.

    Taken as min/max of the two, which equals exact/binomial since the
    binomial variance is never the smaller one. Two zero variances give 1.
    """
    n = len(ext_probs)
    if n == 0:
        return 1.0
    exact = sum(p * (1.0 - p) for p in ext_probs)
    pbar = sum(ext_probs) / n
    binom = n * pbar * (1.0 - pbar)
    lo, hi = sorted((exact, binom))
    if hi <= 0.0:
        return 1.0
    return lo / hi


_BACKENDS = {
    ApproxMethod.DP: dp_max_k,
    ApproxMethod.POISSON: poisson_max_k,
    ApproxMethod.TRANSLATED_POISSON: translated_poisson_max_k,
    ApproxMethod.CLT: clt_max_k,
    ApproxMethod.BINOMIAL: binomial_max_k,
}


def max_k(profile: ExtensionProfile, theta: float,
          method: ApproxMethod | str = ApproxMethod.DP) -> int | None:
    """Largest ``k`` with ``Pr(X >= k) >= theta``; ``None`` if even ``k = 0`` fails."""
    if not 0 < theta <= 1:
        raise ValueError(f"theta must lie in (0, 1], got {theta}")
    return _BACKENDS[ApproxMethod(method)](profile, theta)


def hybrid_max_k(profile: ExtensionProfile, theta: float,
                 hp: Hyperparams = Hyperparams()) -> int | None:
    return max_k(profile, theta, select_method(profile, hp))


def poisson_pmf(lam: float, count: int) -> np.ndarray:
    """``Pr(Poisson(lam) = k)`` for ``k = 0..count``."""
    if lam == 0:
        out = np.zeros(count + 1)
        out[0] = 1.0
        return out
    k = np.arange(count + 1)
    return np.exp(k * math.log(lam) - lam - gammaln(k + 1))


def _shifted_poisson_tail(lam: float, shift: int, count: int) -> list[float]:
    """``Pr(shift + Poisson(lam) >= k)`` for ``k = 0..count``.

    Accumulates ``Pr(P < j) = Pr(P < j-1) + lam/(j-1) * Pr(P = j-2)`` from
    ``Pr(P < 1) = exp(-lam)``; the point mass is carried in log space.
    """
    tail = [1.0] * min(shift + 1, count + 1)
    if len(tail) == count + 1:
        return tail
    if lam <= 0.0:
        return tail + [0.0] * (count + 1 - len(tail))
    log_lam = math.log(lam)
    log_pmf = -lam          # log Pr(P = 0)
    below = math.exp(log_pmf)  # Pr(P < 1)
    j = 1
    for _ in range(shift + 1, count + 1):
        tail.append(max(0.0, 1.0 - below))
        # advance to Pr(P < j+1) = Pr(P < j) + lam/j * Pr(P = j-1)
        log_pmf += log_lam - math.log(j)
        below += math.exp(log_pmf)
        j += 1
    return tail


def _scan_profile(profile: ExtensionProfile, theta: float, tail) -> int | None:
    tri = profile.tri_prob
    return _scan(lambda k: tri * tail[k], len(tail) - 1, theta)


def _scan(tail_fn, kmax: int, theta: float) -> int | None:
    if tail_fn(0) < theta - TIE_TOL:
        return None
    k = 0
    while k < kmax and tail_fn(k + 1) >= theta - TIE_TOL:
        k += 1
    return k
