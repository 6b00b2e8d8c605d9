"""Mutual information of discrete channels and the measurement channels
that do not come from a receiver topology: unambiguous state
discrimination (USD), heterodyne wedges, and a symmetric-channel model of
the optimal measurement.

Logs are base 2 throughout.  Priors are uniform (1/M) unless the caller
passes something else; prior optimization is out of scope.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import helstrom_psk, heterodyne_wedge_probs, symmetric_eigenvalues

__all__ = [
    "uniform_priors",
    "validate_channel",
    "mutual_information",
    "UsdPovm",
    "usd_povm",
    "usd_channel",
    "usd_mutual_information",
    "heterodyne_channel",
    "heterodyne_mutual_information",
    "helstrom_channel",
]

_ROW_SUM_TOL = 1e-10


def uniform_priors(M: int) -> np.ndarray:
    return np.full(M, 1.0 / M)


def validate_channel(P: np.ndarray) -> np.ndarray:
    """Check row-stochasticity (rows sum to 1 within 1e-10, entries in [0,1])."""
    P = np.asarray(P, dtype=float)
    if P.ndim != 2:
        raise ValueError("channel matrix must be two-dimensional")
    if np.any(P < -1e-12) or np.any(P > 1.0 + 1e-12):
        raise ValueError("channel entries must lie in [0, 1]")
    sums = P.sum(axis=1)
    if np.any(np.abs(sums - 1.0) > _ROW_SUM_TOL):
        raise ValueError(f"channel rows must sum to 1, got {sums}")
    return P


def mutual_information(priors, channel) -> float:
    """Shannon mutual information I(X;Y) in bits; 0*log(0) terms are 0."""
    p = np.asarray(priors, dtype=float)
    if np.any(p < 0):
        raise ValueError("priors must be non-negative")
    if abs(p.sum() - 1.0) > 1e-10:
        raise ValueError("priors must sum to 1")
    P = validate_channel(channel)
    if P.shape[0] != p.size:
        raise ValueError("priors and channel dimensions do not match")
    py = p @ P
    total = 0.0
    for x in range(P.shape[0]):
        if p[x] == 0.0:
            continue
        for y in range(P.shape[1]):
            if P[x, y] > 0.0 and py[y] > 0.0:
                total += p[x] * P[x, y] * math.log2(P[x, y] / py[y])
    return max(total, 0.0)


@dataclass(frozen=True)
class UsdPovm:
    """Unambiguous discrimination measurement for a symmetric PSK set.

    ``success`` is the (symbol-independent) conclusive probability,
    equal to the smallest ensemble eigenvalue; ``big_lambda`` is the sum
    of inverse eigenvalues entering the reciprocal-state normalization.
    """

    lambdas: tuple[float, ...]
    success: float
    big_lambda: float

    @property
    def M(self) -> int:
        return len(self.lambdas)

    @property
    def degenerate(self) -> bool:
        return self.success == 0.0


def usd_povm(alpha: float, M: int) -> UsdPovm:
    lams = symmetric_eigenvalues(alpha, M).lambdas
    lam_min = min(lams)
    if lam_min <= 0.0:
        return UsdPovm(lams, 0.0, math.inf)
    big = sum(1.0 / x for x in lams)
    return UsdPovm(lams, lam_min, big)


def usd_channel(alpha: float, M: int) -> np.ndarray:
    """Channel matrix of the USD measurement, shape (M, M+1).

    Conclusive outcomes never misidentify: the first M columns are
    ``success`` on the diagonal and 0 elsewhere; the last column is the
    inconclusive probability 1 - success.
    """
    povm = usd_povm(alpha, M)
    P = np.zeros((M, M + 1))
    P[:, M] = 1.0 - povm.success
    for m in range(M):
        P[m, m] = povm.success
    return P


def usd_mutual_information(alpha: float, M: int) -> float:
    """Equals success * log2(M) for uniform priors."""
    return mutual_information(uniform_priors(M), usd_channel(alpha, M))


def heterodyne_channel(alpha: float, M: int) -> np.ndarray:
    """M-outcome wedge channel of ideal heterodyne detection.

    The continuous outcome is discretized to the ML wedge decision, which
    discards some information; the continuous-outcome mutual information
    would be strictly larger.
    """
    w = heterodyne_wedge_probs(alpha, M)
    return np.stack([np.roll(w, m) for m in range(M)])


def heterodyne_mutual_information(alpha: float, M: int) -> float:
    return mutual_information(uniform_priors(M), heterodyne_channel(alpha, M))


def helstrom_channel(alpha: float, M: int) -> np.ndarray:
    """Symmetric-channel model of the optimal measurement.

    Only the success probability of the square-root measurement is pinned
    down by the error rate; the off-diagonal conditionals are modelled as
    equal.  This is a modeling choice, adequate for comparison curves but
    not an exact description of the measurement statistics.
    """
    pe = helstrom_psk(alpha, M)
    P = np.full((M, M), pe / (M - 1))
    np.fill_diagonal(P, 1.0 - pe)
    return P
