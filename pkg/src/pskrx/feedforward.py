"""N-step feedforward displacement receivers.

The incoming signal is split into N branches of equal intensity
(reflectance 1/(N-n+1) at branch n), so each step sees a copy of the
symbol at amplitude alpha/sqrt(N).  The displacement applied at step n+1
is chosen from the click record of steps 1..n.  Three policies:

* ``fixed_order``: null the symbols of a fixed order, advancing one
  position per click.  When the last step clicks, the estimate is drawn
  uniformly from the symbols not yet ruled out; otherwise the current
  hypothesis is kept.  Closed-form per-symbol correct-decision sums are
  implemented for the default orders (3PSK 0->1->2; 4PSK 0->2->1),
  including dark counts.

* ``optimized_displacement`` (3PSK): after the first click the remaining
  steps run a binary discrimination between the two surviving symbols
  with a displacement offset solving a tanh fixed-point condition rather
  than exact nulling; this helps only for weak signals.

* ``map_posterior`` (4PSK, ideal detectors): the nulled symbol is the one
  with the largest running posterior, ties broken at random.  A
  closed-form expression is implemented and cross-validated against exact
  tree enumeration.

``channel_matrix_ff`` computes exact conditional decision probabilities
for any policy by traversing the feedforward decision tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .detection import DetectorModel, IDEAL_DETECTOR

__all__ = [
    "FeedforwardSpec",
    "ClickProbs",
    "step_reflectances",
    "click_probs",
    "error_rate_3psk_ff",
    "error_rate_3psk_ff_ideal",
    "error_rate_3psk_ff_asymptotic",
    "error_rate_4psk_ff",
    "error_rate_4psk_ff_ideal",
    "error_rate_4psk_ff_asymptotic",
    "optimized_beta",
    "error_rate_3psk_ff_optdisp",
    "map_nulling_threshold",
    "error_rate_4psk_map",
    "channel_matrix_ff",
    "error_rate_ff",
    "MAX_ENUMERATION_STEPS",
]

MAX_ENUMERATION_STEPS = 24

_DEFAULT_ORDER = {3: (0, 1, 2), 4: (0, 2, 1, 3)}


def _normalize_order(M: int, order) -> tuple[int, ...]:
    if order is None:
        return _DEFAULT_ORDER[M]
    order = tuple(int(s) for s in order)
    if len(set(order)) != len(order) or any(not 0 <= s < M for s in order):
        raise ValueError(f"nulling order must be distinct symbols in 0..{M - 1}, got {order}")
    if len(order) == M - 1:
        order = order + tuple(s for s in range(M) if s not in order)
    if len(order) != M:
        raise ValueError(f"nulling order must list M or M-1 symbols, got {order}")
    return order


@dataclass(frozen=True)
class FeedforwardSpec:
    """Topology and policy of an N-step feedforward receiver."""

    M: int
    N: int
    policy: str = "fixed_order"
    nulling_order: tuple[int, ...] | None = None
    detector: DetectorModel = field(default_factory=lambda: IDEAL_DETECTOR)

    def __post_init__(self):
        if self.M not in (3, 4):
            raise ValueError(f"M must be 3 or 4, got {self.M}")
        if self.N < 1:
            raise ValueError(f"N must be >= 1, got {self.N}")
        if self.policy not in ("fixed_order", "map_posterior", "optimized_displacement"):
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.policy == "map_posterior":
            if self.M != 4:
                raise ValueError("map_posterior policy is defined for M=4 only")
            if not self.detector.is_ideal:
                raise ValueError("map_posterior policy requires an ideal detector")
        if self.policy == "optimized_displacement" and self.M != 3:
            raise ValueError("optimized_displacement policy is defined for M=3 only")
        object.__setattr__(self, "nulling_order", _normalize_order(self.M, self.nulling_order))


def step_reflectances(N: int) -> list[float]:
    """Splitter reflectances making all N branch intensities equal."""
    return [1.0 / (N - n + 1) for n in range(1, N)]


@dataclass(frozen=True)
class ClickProbs:
    """Per-step no-click probabilities.

    ``p0`` applies when the nulled hypothesis is the true symbol, ``p1``
    for the nearest wrong hypothesis, ``p2`` (4PSK only) for the opposite
    one.  For 3PSK all wrong hypotheses are equidistant.
    """

    p0: float
    p1: float
    p2: float | None = None


def click_probs(alpha: float, spec: FeedforwardSpec) -> ClickProbs:
    a2 = alpha * alpha
    eta, nu = spec.detector.eta, spec.detector.nu
    p0 = math.exp(-nu)
    if spec.M == 3:
        return ClickProbs(p0, math.exp(-nu - 3.0 * eta * a2 / spec.N))
    return ClickProbs(
        p0,
        math.exp(-nu - 2.0 * eta * a2 / spec.N),
        math.exp(-nu - 4.0 * eta * a2 / spec.N),
    )


# ---------------------------------------------------------------------------
# fixed-order closed forms
# ---------------------------------------------------------------------------

def error_rate_3psk_ff(alpha: float, spec: FeedforwardSpec) -> float:
    """Average error rate of the 3PSK fixed-order feedforward receiver.

    Valid for any detector model.  Requires N >= 2 (the decision rule
    distinguishes the last step from the first N-1).
    """
    if spec.M != 3 or spec.policy != "fixed_order":
        raise ValueError("closed form applies to the 3PSK fixed_order policy")
    if spec.N < 2:
        raise ValueError("3PSK feedforward closed form requires N >= 2")
    N = spec.N
    cp = click_probs(alpha, spec)
    p0, p1 = cp.p0, cp.p1

    lp0 = -spec.detector.nu
    lp1 = lp0 - 3.0 * spec.detector.eta * alpha * alpha / N
    t = np.arange(N - 1)

    P00 = math.exp(N * lp0)
    # one click at step t+1 <= N-1, silent afterwards; or the single click
    # at the last step resolved by a fair guess between the two survivors
    P11 = (1 - p1) * float(np.exp(t * lp1 + (N - 1 - t) * lp0).sum())
    P11 += 0.5 * math.exp((N - 1) * lp1) * (1 - p1)
    # at least two clicks (decision fixed at the second), split by whether
    # the first click is at step 1 or later; plus the fair-guess term
    t1 = np.arange(1, N - 1)
    P22 = (1 - p1) * float(
        (np.exp(t1 * lp1) * (1.0 - np.exp((N - 1 - t1) * lp1))).sum()
    )
    P22 += (1 - p1) * (1 - p1) * float(np.exp(t * lp1).sum())
    P22 += 0.5 * math.exp((N - 1) * lp1) * (1 - p1)
    return 1.0 - (P00 + P11 + P22) / 3.0


def error_rate_3psk_ff_ideal(alpha: float, N: int, eta: float = 1.0) -> float:
    """Dark-count-free 3PSK feedforward error rate in closed form."""
    if N < 2:
        raise ValueError("requires N >= 2")
    x = 3.0 * eta * alpha * alpha
    return (math.exp(-x) / 3.0) * (2.0 + N * math.expm1(x / N))


def error_rate_3psk_ff_asymptotic(alpha: float, eta: float = 1.0) -> float:
    """N -> infinity limit of the 3PSK feedforward error rate (nu = 0)."""
    x = 3.0 * eta * alpha * alpha
    return (math.exp(-x) / 3.0) * (2.0 + x)


def error_rate_4psk_ff(alpha: float, spec: FeedforwardSpec) -> float:
    """Average error rate of the 4PSK fixed-order (0->2->1) feedforward receiver.

    Valid for any detector model.  Requires N >= 3.
    """
    if spec.M != 4 or spec.policy != "fixed_order":
        raise ValueError("closed form applies to the 4PSK fixed_order policy")
    if spec.nulling_order != (0, 2, 1, 3):
        raise ValueError(
            "no closed form for nulling order "
            f"{spec.nulling_order}; use channel_matrix_ff or the Monte Carlo path"
        )
    if spec.N < 3:
        raise ValueError("4PSK feedforward closed form requires N >= 3")
    N = spec.N
    eta, nu = spec.detector.eta, spec.detector.nu
    a2 = alpha * alpha
    lp0 = -nu
    lp1 = -nu - 2.0 * eta * a2 / N
    lp2 = -nu - 4.0 * eta * a2 / N
    p1 = math.exp(lp1)
    p2 = math.exp(lp2)

    def geom(log_r: float, k: np.ndarray | int) -> np.ndarray | float:
        # sum_{s=0}^{k-1} r^s, stable for r near 1
        if log_r == 0.0:
            return np.asarray(k, dtype=float) + 0.0
        return np.expm1(np.asarray(k, dtype=float) * log_r) / math.expm1(log_r)

    P00 = math.exp(N * lp0)

    t = np.arange(N - 2)
    # two clicks before the last step, then silence on the nulled branch
    inner11 = (1 - p1) * np.exp((N - 2 - t) * lp0) * geom(lp1 - lp0, N - 2 - t)
    P11 = (1 - p1) * float((np.exp(t * lp1) * inner11).sum())
    P11 += 0.5 * (N - 1) * math.exp((N - 2) * lp1) * (1 - p1) ** 2
    P11 += math.exp((N - 1) * lp1) * (1 - p1) / 3.0

    tt = np.arange(N - 1)
    P22 = (1 - p2) * float(np.exp(tt * lp2 + (N - 1 - tt) * lp0).sum())
    P22 += math.exp((N - 1) * lp2) * (1 - p2) / 3.0

    # three clicks: sum over the first two click positions with the third
    # click anywhere in the remainder
    k1 = N - 2 - t  # number of s-terms at each t
    sum_p1 = geom(lp1, k1)
    sum_p1_p2tail = np.exp((N - 2 - t) * lp2) * geom(lp1 - lp2, k1)
    inner33 = (1 - p1) * (sum_p1 - sum_p1_p2tail)
    P33 = (1 - p1) * float((np.exp(t * lp1) * inner33).sum())
    P33 += 0.5 * (N - 1) * math.exp((N - 2) * lp1) * (1 - p1) ** 2
    P33 += math.exp((N - 1) * lp1) * (1 - p1) / 3.0

    return 1.0 - (P00 + P11 + P22 + P33) / 4.0


def error_rate_4psk_ff_ideal(alpha: float, N: int, eta: float = 1.0) -> float:
    """Dark-count-free 4PSK fixed-order feedforward error rate in closed form."""
    if N < 3:
        raise ValueError("requires N >= 3")
    a2 = alpha * alpha
    lp1 = -2.0 * eta * a2 / N
    lp2 = -4.0 * eta * a2 / N
    p1N = math.exp(N * lp1)
    p1N1 = math.exp((N - 1) * lp1)
    p1N2 = math.exp((N - 2) * lp1)
    p2N = math.exp(N * lp2)
    p2N1 = math.exp((N - 1) * lp2)
    e11 = (3.0 * (N - 1) * p1N2 + 4.0 * p1N1 - (3.0 * N - 5.0) * p1N) / 6.0
    e22 = (p2N + 2.0 * p2N1) / 3.0
    e33 = (
        3.0 * (N - 1) * p1N2
        + (6.0 * N - 8.0) * p1N1
        + 6.0 * p2N1
        - (9.0 * N - 11.0) * p1N
    ) / 6.0
    return (e11 + e22 + e33) / 4.0


def error_rate_4psk_ff_asymptotic(alpha: float, eta: float = 1.0) -> float:
    """N -> infinity limit of the 4PSK feedforward error rate (nu = 0)."""
    x = eta * alpha * alpha
    return 0.5 * math.exp(-4.0 * x) + 0.25 * (1.0 + 6.0 * x) * math.exp(-2.0 * x)


# ---------------------------------------------------------------------------
# displacement-optimized 3PSK feedforward
# ---------------------------------------------------------------------------

def optimized_beta(n: int, N: int, alpha: float) -> float:
    """Displacement offset for binary discrimination over n remaining steps.

    Solves ``c = beta * tanh(2*c*beta)`` with ``c = (sqrt(3)/2) *
    sqrt(n/N) * alpha`` by bisection to 1e-12; the root is unique and
    approaches c from above as the argument grows.  Returns 0.0 for the
    degenerate case alpha == 0.
    """
    if not 1 <= n <= N - 1:
        raise ValueError(f"n must lie in [1, N-1], got n={n}, N={N}")
    if alpha == 0.0:
        return 0.0
    c = 0.5 * math.sqrt(3.0) * math.sqrt(n / N) * alpha

    def f(beta: float) -> float:
        return beta * math.tanh(2.0 * c * beta) - c

    lo, hi = c, c + 5.0
    if f(lo) > 0.0:
        raise ArithmeticError("bracket lower end not below the root")
    widenings = 0
    while f(hi) < 0.0:
        widenings += 1
        if widenings > 10:
            raise ArithmeticError("failed to bracket the displacement root")
        hi = c + (hi - c) * 2.0
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if f(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def error_rate_3psk_ff_optdisp(
    alpha: float, N: int, eta: float = 1.0, betas=None
) -> float:
    """3PSK feedforward error rate with optimized post-click displacements.

    Dark-count free.  ``betas`` may supply the per-n displacement offsets
    (index n = 1..N-1 remaining steps); by default the tanh fixed-point
    roots are used.  Setting ``betas`` to the exact-nulling values
    ``(sqrt(3)/2) sqrt(n/N) alpha`` recovers the fixed-nulling closed form.

    The detector efficiency scales every residual intensity, including the
    post-click binary stage.
    """
    if N < 2:
        raise ValueError("requires N >= 2")
    x = 3.0 * eta * alpha * alpha
    if betas is None:
        betas = [optimized_beta(n, N, alpha) for n in range(1, N)]
    betas = list(betas)
    if len(betas) != N - 1:
        raise ValueError(f"expected {N - 1} displacement offsets, got {len(betas)}")
    acc = 1.0
    for n in range(1, N):
        a_n = 0.5 * math.sqrt(3.0) * math.sqrt(n / N) * alpha
        b = betas[n - 1]
        pt1 = math.exp(-eta * (a_n - b) ** 2)
        pt2 = math.exp(-eta * (a_n + b) ** 2)
        acc += math.exp(x * n / N) * (1.0 - pt1 + pt2)
    return (math.exp(-x) / 3.0) * (2.0 + math.expm1(x / N) * acc)


# ---------------------------------------------------------------------------
# posterior-maximizing 4PSK feedforward (ideal detectors)
# ---------------------------------------------------------------------------

def map_nulling_threshold(alpha: float, N: int) -> float:
    """Click-count threshold governing the post-click nulling choice.

    After s silent steps and one click while nulling symbol 0, the
    posterior of the opposite symbol exceeds the (tied) posteriors of the
    adjacent ones iff s < t; the receiver then nulls the opposite symbol
    next, otherwise one of the adjacent pair at random.
    """
    a2 = alpha * alpha
    if a2 == 0.0:
        return math.inf
    return (-2.0 * a2 + N * math.log1p(math.exp(2.0 * a2 / N))) / (2.0 * a2)


def error_rate_4psk_map(alpha: float, N: int) -> float:
    """4PSK feedforward error rate under posterior-maximizing nulling.

    Ideal detectors only.  Closed-form sums over click patterns; the
    branch taken after the first click switches at the threshold
    ``map_nulling_threshold``.  Cross-validated against exact tree
    enumeration of the posterior-update policy (ties split evenly).
    """
    if N < 3:
        raise ValueError("requires N >= 3")
    if alpha == 0.0:
        return 0.75
    a2 = alpha * alpha
    p1 = math.exp(-2.0 * a2 / N)
    p2 = math.exp(-4.0 * a2 / N)
    t = map_nulling_threshold(alpha, N)
    ceil_t = math.ceil(t)
    z = (N - 1) // 2
    y = N // 2

    def rng_incl(lo: int, hi: int):
        return range(max(lo, 0), hi + 1)

    P11 = 0.0
    for s in rng_incl(max(1, ceil_t), N - 1):
        P11 += p1 ** s * (1 - p1)
    for s in rng_incl(0, min(N - 2, ceil_t - 1)):
        P11 += p1 ** s * (1 - p1) * (1.0 - p1 ** (N - 1 - s))

    P22 = 0.0
    for s in rng_incl(0, min(N - 1, ceil_t - 1)):
        P22 += p2 ** s * (1 - p2)
    for s in rng_incl(max(1, ceil_t), (N - 2) // 2):
        inner = sum(p1 ** k * (1 - p1) for k in rng_incl(s + 1, N - 2 - s))
        P22 += p2 ** s * (1 - p2) * inner
    for s in rng_incl(max(1, ceil_t), (N - 3) // 2):
        inner = sum(
            p1 ** k * (1 - p1) * (1.0 - p1 ** (N - 2 - s - k)) for k in rng_incl(0, s)
        )
        P22 += p2 ** s * (1 - p2) * inner
    for s in rng_incl(max(z, ceil_t), N - 3):
        inner = sum(
            p1 ** k * (1 - p1) * (1.0 - p1 ** (N - 2 - s - k))
            for k in rng_incl(0, N - 3 - s)
        )
        P22 += p2 ** s * (1 - p2) * inner

    P33 = 0.0
    for s in rng_incl(0, min(N - 3, ceil_t - 1)):
        inner = sum(
            p1 ** k * (1 - p1) * (1.0 - p2 ** (N - 2 - s - k))
            for k in rng_incl(0, N - 3 - s)
        )
        P33 += p1 ** s * (1 - p1) * inner
    for s in rng_incl(max(1, ceil_t), (N - 3) // 2):
        inner = sum(
            p2 ** k * (1 - p2) * (1.0 - p1 ** (N - 2 - s - k))
            for k in rng_incl(s + 1, N - 3 - s)
        )
        P33 += p1 ** s * (1 - p1) * inner
    for s in rng_incl(max(1, ceil_t), (N - 2) // 2):
        inner = sum(p2 ** k * (1 - p2) for k in rng_incl(0, s))
        P33 += p1 ** s * (1 - p1) * inner
    for s in rng_incl(max(y, ceil_t), N - 2):
        inner = sum(p2 ** k * (1 - p2) for k in rng_incl(0, N - 2 - s))
        P33 += p1 ** s * (1 - p1) * inner

    return 1.0 - 0.25 * (1.0 + P11 + P22 + P33)


# ---------------------------------------------------------------------------
# exact decision-tree channel matrices
# ---------------------------------------------------------------------------

def channel_matrix_ff(alpha: float, spec: FeedforwardSpec) -> np.ndarray:
    """Exact decided-symbol channel matrix by decision-tree traversal.

    Shape (M, M); rows sum to 1.  Limited to N <= 24; beyond that use the
    Monte Carlo path.
    """
    if spec.N > MAX_ENUMERATION_STEPS:
        raise ValueError(
            f"exact enumeration supports N <= {MAX_ENUMERATION_STEPS}; "
            "use the Monte Carlo path for larger N"
        )
    from . import policies

    return policies.make_policy(alpha, spec).enumerate_channel()


def error_rate_ff(alpha: float, spec: FeedforwardSpec) -> float:
    """Error rate for any feedforward spec via the exact channel matrix."""
    P = channel_matrix_ff(alpha, spec)
    return 1.0 - float(np.trace(P)) / spec.M
