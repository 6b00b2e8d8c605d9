"""Vectorized NumPy Monte Carlo kernels (fallback backend).

Each kernel consumes a (trials, draws) array of uniforms with a fixed
layout -- one column per detection step, then the policy's guess columns
-- and returns per-trajectory outcomes.  The compiled backend implements
the same contract; given the same uniforms the two must produce identical
outcomes, which the test suite asserts.  Input symbols are assigned
round-robin: trajectory i carries symbol (m0 + i) % M.

A click happens iff the step draw is >= the no-click probability.
Uniform guesses over k candidates select index floor(u * k).
"""

from __future__ import annotations

import numpy as np

_RAW3 = np.array([3, 0, 1, 2], dtype=np.int8)  # index cA*2 + cB


def _symbols(n: int, M: int, m0: int) -> np.ndarray:
    return (m0 + np.arange(n, dtype=np.int64)) % M


def decide_static3(u: np.ndarray, q: np.ndarray, m0: int) -> np.ndarray:
    """Two-port receiver; returns raw outcome 0=(off,on) 1=(on,off) 2=(on,on) 3=(off,off)."""
    n = u.shape[0]
    m = _symbols(n, 3, m0)
    ca = ~(u[:, 0] < q[m, 0])
    cb = ~(u[:, 1] < q[m, 1])
    return _RAW3[ca.astype(np.int8) * 2 + cb.astype(np.int8)]


def decide_static4(u: np.ndarray, q: np.ndarray, m0: int) -> np.ndarray:
    """Three-port receiver; returns the raw click pattern cA*4 + cB*2 + cC."""
    n = u.shape[0]
    m = _symbols(n, 4, m0)
    ca = ~(u[:, 0] < q[m, 0])
    cb = ~(u[:, 1] < q[m, 1])
    cc = ~(u[:, 2] < q[m, 2])
    return (ca.astype(np.int8) * 4 + cb.astype(np.int8) * 2 + cc.astype(np.int8)).astype(np.int8)


def decide_ff_fixed(u: np.ndarray, q: np.ndarray, order: np.ndarray, m0: int) -> np.ndarray:
    """Fixed-order feedforward; q[m, j] is the no-click probability of input
    m when j symbols have been ruled out (capped at M-1)."""
    n, dpt = u.shape
    N = dpt - 1
    M = q.shape[0]
    m = _symbols(n, M, m0)
    order = np.asarray(order, dtype=np.int8)
    nc = np.zeros(n, dtype=np.int64)
    last_click = np.zeros(n, dtype=bool)
    for k in range(N):
        off = u[:, k] < q[m, np.minimum(nc, M - 1)]
        nc += ~off
        if k == N - 1:
            last_click = ~off
    cap = np.minimum(nc, M - 1)
    dec = order[cap]
    ncand = M - cap
    pick = (u[:, N] * ncand).astype(np.int64)
    dec_guess = order[cap + pick]
    return np.where(last_click, dec_guess, dec).astype(np.int8)


def decide_ff_map(
    u: np.ndarray,
    q: np.ndarray,
    log_w: np.ndarray,
    adj: np.ndarray,
    m0: int,
) -> np.ndarray:
    """Posterior-maximizing feedforward (4PSK, ideal detectors).

    Likelihood exponents are tracked as integers; ties are exact events
    detected by float equality of identically computed log-posteriors.
    One guess column is reserved per click (at most 3) plus one for the
    final decision.
    """
    n, dpt = u.shape
    N = dpt - 4
    lp1, l1, l2 = float(log_w[0]), float(log_w[1]), float(log_w[2])
    m = _symbols(n, 4, m0)
    adj = np.asarray(adj, dtype=np.int64)
    a = np.zeros((n, 4), dtype=np.int64)
    c = np.zeros((n, 4), dtype=np.int64)
    d = np.zeros((n, 4), dtype=np.int64)
    alive = np.ones((n, 4), dtype=bool)
    hyp = np.zeros(n, dtype=np.int64)
    ncl = np.zeros(n, dtype=np.int64)

    def pick_argmax(rows, guess):
        logL = a[rows] * lp1 + c[rows] * l1 + d[rows] * l2
        logL[~alive[rows]] = -np.inf
        best = logL.max(axis=1)
        tie = logL == best[:, None]
        ntie = tie.sum(axis=1)
        pick = (guess * ntie).astype(np.int64)
        cs = np.cumsum(tie, axis=1) - 1
        sel = tie & (cs == pick[:, None])
        return sel.argmax(axis=1)

    for k in range(N):
        off = u[:, k] < q[m, hyp]
        # silence decays every non-nulled hypothesis (adj is symmetric)
        a[off] += adj[hyp[off]]
        idx = np.nonzero(~off)[0]
        if idx.size:
            h = hyp[idx]
            adj_h = adj[h]
            c[idx] += adj_h == 1
            d[idx] += adj_h == 2
            alive[idx, h] = False
            hyp[idx] = pick_argmax(idx, u[idx, N + ncl[idx]])
            ncl[idx] += 1
    rows = np.arange(n)
    return pick_argmax(rows, u[:, N + 3]).astype(np.int8)


def decide_ff_optdisp(
    u: np.ndarray, q1: np.ndarray, q2: np.ndarray, m0: int
) -> np.ndarray:
    """Optimized-displacement 3PSK feedforward.

    ``q1[m]`` is the per-step no-click probability before the first click;
    ``q2[m, n]`` the per-step probability during the binary stage with n
    steps remaining.  Silence after the first click decides 1, any further
    click decides 2; a first click on the last step is a fair guess.
    """
    n, dpt = u.shape
    N = dpt - 1
    m = _symbols(n, 3, m0)
    first = np.full(n, -1, dtype=np.int64)
    click2 = np.zeros(n, dtype=bool)
    for k in range(N):
        fresh = first < 0
        qq = np.where(fresh, q1[m], q2[m, N - 1 - np.maximum(first, 0)])
        clicked = ~(u[:, k] < qq)
        first[fresh & clicked] = k
        click2 |= clicked & ~fresh
    dec = np.zeros(n, dtype=np.int8)
    has = first >= 0
    at_last = first == N - 1
    guess = (1 + (u[:, N] * 2).astype(np.int64)).astype(np.int8)
    dec[has & at_last] = guess[has & at_last]
    mid = has & ~at_last
    dec[mid] = np.where(click2[mid], 2, 1).astype(np.int8)
    return dec
