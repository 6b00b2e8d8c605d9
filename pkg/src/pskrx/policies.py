"""Feedforward policy objects shared by the exact tree enumeration and the
Monte Carlo samplers.

A policy owns the per-step no-click probability tables for every (input
symbol, internal state) pair and two consumers use them:

* ``enumerate_channel`` walks the decision tree exactly, splitting
  probability mass evenly wherever the physical rule says "guess at
  random", and returns the decided-symbol channel matrix.

* ``reference_decide`` plays a single trajectory from a row of uniform
  draws.  This simple per-step implementation defines the draw-consumption
  contract for the fast kernels: one draw per step (off iff u < p_off),
  followed by the policy's guess draws.  The vectorized and compiled
  kernels must reproduce its decisions bit for bit.
"""

from __future__ import annotations

import math

import numpy as np

from .feedforward import FeedforwardSpec, optimized_beta
from .signal_model import PskConstellation

__all__ = [
    "FixedOrderPolicy",
    "MapPosteriorPolicy",
    "OptimizedDisplacementPolicy",
    "make_policy",
]

# square-constellation separation classes: 0 same, 1 adjacent, 2 opposite
_ADJ4 = np.array(
    [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]], dtype=np.int64
)


class FixedOrderPolicy:
    """Null symbols in a fixed order, advancing one position per click.

    The hypothesis after ``j`` clicks is ``order[min(j, M-1)]``.  Final
    decision: the current hypothesis if the last step was silent, else a
    uniform guess over the symbols not yet ruled out.
    """

    kind = "fixed_order"

    def __init__(self, alpha: float, spec: FeedforwardSpec):
        self.spec = spec
        self.alpha = float(alpha)
        self.M, self.N = spec.M, spec.N
        self.order = spec.nulling_order
        amps = PskConstellation(self.alpha, self.M).amplitudes()
        det = spec.detector
        q = np.empty((self.M, self.M))
        for m in range(self.M):
            for j in range(self.M):
                h = self.order[min(j, self.M - 1)]
                q[m, j] = math.exp(
                    -det.nu - det.eta * abs(amps[m] - amps[h]) ** 2 / self.N
                )
        self.off_prob = q  # (input, clicks capped at M-1)
        self.draws_per_trajectory = self.N + 1

    def enumerate_channel(self) -> np.ndarray:
        M, N = self.M, self.N
        P = np.zeros((M, M))
        for m in range(M):
            # click count capped at M-1; capped states behave identically
            probs = np.zeros(M)
            probs[0] = 1.0
            for _ in range(N - 1):
                nxt = np.zeros(M)
                for nc in range(M):
                    if probs[nc] == 0.0:
                        continue
                    qq = self.off_prob[m, nc]
                    nxt[nc] += probs[nc] * qq
                    nxt[min(nc + 1, M - 1)] += probs[nc] * (1.0 - qq)
                probs = nxt
            for nc in range(M):
                if probs[nc] == 0.0:
                    continue
                qq = self.off_prob[m, nc]
                P[m, self.order[nc]] += probs[nc] * qq
                cand = self.order[min(nc + 1, M - 1):]
                w = probs[nc] * (1.0 - qq) / len(cand)
                for j in cand:
                    P[m, j] += w
        return P

    def reference_decide(self, m: int, u) -> tuple[int, list[bool]]:
        nc = 0
        clicks = []
        last_click = False
        for k in range(self.N):
            click = not (u[k] < self.off_prob[m, min(nc, self.M - 1)])
            clicks.append(click)
            if click:
                nc += 1
            last_click = click
        if last_click:
            cand = self.order[min(nc, self.M - 1):]
            return cand[int(u[self.N] * len(cand))], clicks
        return self.order[min(nc, self.M - 1)], clicks


class MapPosteriorPolicy:
    """Null the symbol with the largest running posterior (4PSK, ideal).

    Posterior likelihoods stay in the form p1^a (1-p1)^c (1-p2)^d, so the
    state is a triple of integer exponents per symbol; ties are exact
    integer events, not float accidents.  The first step nulls symbol 0
    (any choice is equivalent by symmetry); clicked hypotheses are ruled
    out for good since a nulled true symbol never clicks.
    """

    kind = "map_posterior"

    def __init__(self, alpha: float, spec: FeedforwardSpec):
        self.spec = spec
        self.alpha = float(alpha)
        self.M, self.N = 4, spec.N
        a2 = self.alpha * self.alpha
        p1 = math.exp(-2.0 * a2 / self.N)
        p2 = p1 * p1
        self.p1, self.p2 = p1, p2
        self.q_levels = np.array([1.0, p1, p2])
        self.off_prob = self.q_levels[_ADJ4]  # (input, hypothesis)
        self.log_p1 = -2.0 * a2 / self.N
        self.log_1m_p1 = math.log1p(-p1) if p1 < 1.0 else 0.0
        self.log_1m_p2 = math.log1p(-p2) if p2 < 1.0 else 0.0
        self.draws_per_trajectory = self.N + 4

    def _log_post(self, st):
        out = []
        for e in st:
            if e is None:
                out.append(None)
            else:
                a, c, d = e
                out.append(a * self.log_p1 + c * self.log_1m_p1 + d * self.log_1m_p2)
        return out

    def _argmax_set(self, st):
        vals = self._log_post(st)
        best = max(v for v in vals if v is not None)
        return [j for j, v in enumerate(vals) if v is not None and v == best]

    def enumerate_channel(self) -> np.ndarray:
        P = np.zeros((4, 4))
        adj = _ADJ4

        for m in range(4):
            row = P[m]

            def recurse(step, st, hyp, prob):
                if step == self.N:
                    ties = self._argmax_set(st)
                    w = prob / len(ties)
                    for j in ties:
                        row[j] += w
                    return
                qq = self.off_prob[m, hyp]
                if qq > 0.0:
                    ns = tuple(
                        None if e is None else (e[0] + adj[j, hyp], e[1], e[2])
                        for j, e in enumerate(st)
                    )
                    recurse(step + 1, ns, hyp, prob * qq)
                if qq < 1.0:
                    ns = []
                    for j, e in enumerate(st):
                        if e is None or j == hyp:
                            ns.append(None)
                        elif adj[j, hyp] == 1:
                            ns.append((e[0], e[1] + 1, e[2]))
                        else:
                            ns.append((e[0], e[1], e[2] + 1))
                    ns = tuple(ns)
                    ties = self._argmax_set(ns)
                    w = prob * (1.0 - qq) / len(ties)
                    for h2 in ties:
                        recurse(step + 1, ns, h2, w)

            recurse(0, tuple((0, 0, 0) for _ in range(4)), 0, 1.0)
        return P

    def reference_decide(self, m: int, u) -> tuple[int, list[bool]]:
        adj = _ADJ4
        a = [0, 0, 0, 0]
        c = [0, 0, 0, 0]
        d = [0, 0, 0, 0]
        alive = [True] * 4
        hyp = 0
        n_clicks = 0
        clicks = []
        for k in range(self.N):
            click = not (u[k] < self.off_prob[m, hyp])
            clicks.append(click)
            if not click:
                for j in range(4):
                    a[j] += adj[j, hyp]
                continue
            for j in range(4):
                if j == hyp:
                    alive[j] = False
                elif adj[j, hyp] == 1:
                    c[j] += 1
                else:
                    d[j] += 1
            ties, best = [], None
            for j in range(4):
                if not alive[j]:
                    continue
                v = a[j] * self.log_p1 + c[j] * self.log_1m_p1 + d[j] * self.log_1m_p2
                if best is None or v > best:
                    best, ties = v, [j]
                elif v == best:
                    ties.append(j)
            hyp = ties[int(u[self.N + n_clicks] * len(ties))]
            n_clicks += 1
        ties, best = [], None
        for j in range(4):
            if not alive[j]:
                continue
            v = a[j] * self.log_p1 + c[j] * self.log_1m_p1 + d[j] * self.log_1m_p2
            if best is None or v > best:
                best, ties = v, [j]
            elif v == best:
                ties.append(j)
        return ties[int(u[self.N + 3] * len(ties))], clicks


class OptimizedDisplacementPolicy:
    """3PSK feedforward with a binary stage after the first click.

    Until the first click the receiver nulls symbol 0.  A click at step
    N-n (n steps remaining) switches every remaining step to a fixed
    displacement placing the two surviving symbols at amplitudes
    proportional to -(a_n - beta) and -(a_n + beta) along the axis joining
    them, with beta the tanh fixed-point root.  Silence over the remainder
    decides symbol 1, any click decides symbol 2; a first click on the
    very last step is resolved by a fair guess.
    """

    kind = "optimized_displacement"

    def __init__(self, alpha: float, spec: FeedforwardSpec):
        self.spec = spec
        self.alpha = float(alpha)
        self.M, self.N = 3, spec.N
        if self.N < 2:
            raise ValueError("optimized_displacement requires N >= 2")
        det = spec.detector
        a2 = self.alpha * self.alpha
        q1 = np.empty(3)
        q1[0] = math.exp(-det.nu)
        q1[1] = q1[2] = math.exp(-det.nu - 3.0 * det.eta * a2 / self.N)
        self.off_prob_initial = q1
        # per-step no-click probability during the binary stage, indexed by
        # remaining steps n = 1..N-1
        q2 = np.ones((3, self.N))
        self.betas = np.zeros(self.N)
        for n in range(1, self.N):
            a_n = 0.5 * math.sqrt(3.0) * math.sqrt(n / self.N) * self.alpha
            b = optimized_beta(n, self.N, self.alpha) if self.alpha > 0 else 0.0
            self.betas[n] = b
            i0 = 3.0 * a_n * a_n + b * b
            i1 = (a_n - b) ** 2
            i2 = (a_n + b) ** 2
            q2[0, n] = math.exp(-det.nu - det.eta * i0 / n)
            q2[1, n] = math.exp(-det.nu - det.eta * i1 / n)
            q2[2, n] = math.exp(-det.nu - det.eta * i2 / n)
        self.off_prob_binary = q2
        self.draws_per_trajectory = self.N + 1

    def enumerate_channel(self) -> np.ndarray:
        N = self.N
        P = np.zeros((3, 3))
        for m in range(3):
            q1 = self.off_prob_initial[m]
            P[m, 0] += q1 ** N
            for k in range(N):  # first click at step k
                w = q1 ** k * (1.0 - q1)
                if w == 0.0:
                    continue
                n = N - 1 - k
                if n == 0:
                    P[m, 1] += 0.5 * w
                    P[m, 2] += 0.5 * w
                else:
                    silent = self.off_prob_binary[m, n] ** n
                    P[m, 1] += w * silent
                    P[m, 2] += w * (1.0 - silent)
        return P

    def reference_decide(self, m: int, u) -> tuple[int, list[bool]]:
        clicks = []
        first = -1
        for k in range(self.N):
            if first < 0:
                click = not (u[k] < self.off_prob_initial[m])
            else:
                click = not (u[k] < self.off_prob_binary[m, self.N - 1 - first])
            clicks.append(click)
            if click and first < 0:
                first = k
        if first < 0:
            return 0, clicks
        if first == self.N - 1:
            return 1 + int(u[self.N] * 2), clicks
        return (2 if any(clicks[first + 1:]) else 1), clicks


def make_policy(alpha: float, spec: FeedforwardSpec):
    if spec.policy == "fixed_order":
        return FixedOrderPolicy(alpha, spec)
    if spec.policy == "map_posterior":
        return MapPosteriorPolicy(alpha, spec)
    if spec.policy == "optimized_displacement":
        return OptimizedDisplacementPolicy(alpha, spec)
    raise ValueError(f"unknown policy {spec.policy!r}")
