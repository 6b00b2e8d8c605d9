"""Monte Carlo trajectory oracle.

Samples full detection records for every receiver topology and policy and
reduces them to empirical channel matrices with confidence intervals.
The sampler is deterministic: trajectory draws come from fixed-size
chunks, each keyed by (master seed, chunk index) through a counter-based
Philox stream, so results are bit-identical across runs and across worker
counts.  Input symbols are assigned round-robin by global trajectory
index.

The per-trajectory semantics live in the policy objects / reference
functions: one amplitude alpha/sqrt(N) per feedforward step, a
displacement chosen from the click history, and a decision from the full
record.  The fast kernels must agree with the plain per-step reference
implementation draw for draw; the suite asserts this.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .detection import DetectorModel, p_off_intensity
from .feedforward import FeedforwardSpec
from .policies import make_policy
from .static_receivers import (
    StaticReceiver3,
    StaticReceiver4,
    _SEQ_DECISION_4PSK,
    _branch_intensities_3psk,
    _branch_intensities_4psk,
    raw_outcome_decisions_3psk,
)

__all__ = ["McResult", "TrajectoryOutcome", "run_mc", "sample_trajectories", "pe_sigma"]

CHUNK_TRIALS = 1_000_000


@dataclass(frozen=True)
class TrajectoryOutcome:
    input_symbol: int
    click_sequence: tuple[bool, ...]
    decision: int


@dataclass(frozen=True)
class McResult:
    """Empirical decision statistics of one Monte Carlo run."""

    empirical_channel: np.ndarray      # (M, M), rows sum to 1
    counts: np.ndarray                 # (M, M) decision counts
    raw_counts: np.ndarray | None      # (M, K) raw outcome counts (static receivers)
    trials: int
    trials_per_symbol: np.ndarray
    seed: int
    ci95_halfwidth: np.ndarray
    backend: str

    @property
    def pe(self) -> float:
        diag = np.diag(self.counts) / np.maximum(self.trials_per_symbol, 1)
        return 1.0 - float(diag.mean())


def pe_sigma(channel: np.ndarray, trials_per_symbol: np.ndarray) -> float:
    """Std of the round-robin Pe estimator at the given true channel."""
    diag = np.diag(np.asarray(channel))
    var = float((diag * (1.0 - diag) / np.asarray(trials_per_symbol)).sum())
    return math.sqrt(var) / diag.size


class _Plan:
    def __init__(self, M, dpt, kernel, reference, decision_map=None, n_raw=None):
        self.M = M
        self.dpt = dpt
        self.kernel = kernel
        self.reference = reference
        self.decision_map = decision_map  # raw outcome -> decided symbol
        self.n_raw = n_raw


def _static3_tables(alpha: float, rx: StaticReceiver3, det: DetectorModel):
    intens = _branch_intensities_3psk(alpha, rx)
    q = np.empty((3, 2))
    for m in range(3):
        q[m, 0] = p_off_intensity(intens[m, 0], det)
        q[m, 1] = p_off_intensity(intens[m, 1], det)
    return q


def _static4_tables(alpha: float, rx: StaticReceiver4, det: DetectorModel):
    intens = _branch_intensities_4psk(alpha, rx)
    q = np.empty((4, 3))
    for m in range(4):
        for b in range(3):
            q[m, b] = p_off_intensity(intens[m, b], det)
    return q


def _make_plan(receiver, alpha: float, det: DetectorModel | None, backend) -> _Plan:
    if isinstance(receiver, StaticReceiver3):
        if det is None:
            raise ValueError("static receivers need an explicit DetectorModel")
        q = _static3_tables(alpha, receiver, det)
        dmap = np.array(raw_outcome_decisions_3psk(receiver), dtype=np.int8)

        def ref3(m, u):
            ca = not (u[0] < q[m, 0])
            cb = not (u[1] < q[m, 1])
            raw = [3, 0, 1, 2][int(ca) * 2 + int(cb)]
            return raw, [ca, cb]

        return _Plan(
            3, 2, lambda u, m0: backend.decide_static3(u, q, m0), ref3,
            decision_map=dmap, n_raw=4,
        )

    if isinstance(receiver, StaticReceiver4):
        if det is None:
            raise ValueError("static receivers need an explicit DetectorModel")
        q = _static4_tables(alpha, receiver, det)
        dmap = np.array(_SEQ_DECISION_4PSK, dtype=np.int8)

        def ref4(m, u):
            bits = [not (u[b] < q[m, b]) for b in range(3)]
            raw = bits[0] * 4 + bits[1] * 2 + bits[2]
            return raw, bits

        return _Plan(
            4, 3, lambda u, m0: backend.decide_static4(u, q, m0), ref4,
            decision_map=dmap, n_raw=8,
        )

    if isinstance(receiver, FeedforwardSpec):
        policy = make_policy(alpha, receiver)
        dpt = policy.draws_per_trajectory
        if policy.kind == "fixed_order":
            q = policy.off_prob
            order = np.array(policy.order, dtype=np.int8)
            kern = lambda u, m0: backend.decide_ff_fixed(u, q, order, m0)
        elif policy.kind == "map_posterior":
            q = policy.off_prob
            log_w = np.array([policy.log_p1, policy.log_1m_p1, policy.log_1m_p2])
            from .policies import _ADJ4

            kern = lambda u, m0: backend.decide_ff_map(u, q, log_w, _ADJ4, m0)
        elif policy.kind == "optimized_displacement":
            q1 = policy.off_prob_initial
            q2 = policy.off_prob_binary
            kern = lambda u, m0: backend.decide_ff_optdisp(u, q1, q2, m0)
        else:
            raise ValueError(f"unsupported feedforward policy {policy.kind!r}")

        def ref_ff(m, u):
            dec, clicks = policy.reference_decide(m, u)
            return dec, clicks

        return _Plan(receiver.M, dpt, kern, ref_ff)

    raise TypeError(
        f"unsupported receiver type {type(receiver).__name__}; expected "
        "StaticReceiver3, StaticReceiver4, or FeedforwardSpec"
    )


def _chunk_rng(seed: int, chunk_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(chunk_index,))
    return np.random.Generator(np.random.Philox(ss))


def run_mc(
    receiver,
    alpha: float,
    trials: int,
    seed: int,
    det: DetectorModel | None = None,
    workers: int = 1,
    backend=None,
) -> McResult:
    """Sample ``trials`` trajectories and return the empirical channel.

    ``det`` is required for static receivers (feedforward specs carry
    their own detector).  Given identical (receiver, alpha, trials, seed)
    the result is bit-identical regardless of ``workers`` or backend.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if backend is None:
        backend = kernels.active_backend
        backend_name = kernels.BACKEND
    else:
        backend_name = getattr(backend, "__name__", str(backend))
    plan = _make_plan(receiver, alpha, det, backend)
    M = plan.M
    n_out = plan.n_raw if plan.n_raw is not None else M

    n_chunks = (trials + CHUNK_TRIALS - 1) // CHUNK_TRIALS

    def one_chunk(ci: int) -> np.ndarray:
        start = ci * CHUNK_TRIALS
        stop = min(start + CHUNK_TRIALS, trials)
        n = stop - start
        u = _chunk_rng(seed, ci).random((n, plan.dpt))
        out = np.asarray(plan.kernel(u, start % M), dtype=np.int64)
        m = (start + np.arange(n, dtype=np.int64)) % M
        return np.bincount(m * n_out + out, minlength=M * n_out).reshape(M, n_out)

    if workers > 1 and n_chunks > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            chunk_counts = list(ex.map(one_chunk, range(n_chunks)))
    else:
        chunk_counts = [one_chunk(ci) for ci in range(n_chunks)]
    raw = np.sum(chunk_counts, axis=0)

    if plan.decision_map is not None:
        counts = np.zeros((M, M), dtype=np.int64)
        for o in range(n_out):
            counts[:, plan.decision_map[o]] += raw[:, o]
        raw_counts = raw
    else:
        counts = raw
        raw_counts = None

    tps = np.array([trials // M + (1 if m < trials % M else 0) for m in range(M)])
    # rows never sampled (trials < M) stay at zero instead of dividing by 0
    denom = np.maximum(tps, 1)[:, None]
    channel = counts / denom
    ci95 = 1.96 * np.sqrt(channel * (1.0 - channel) / denom)
    return McResult(
        empirical_channel=channel,
        counts=counts,
        raw_counts=raw_counts,
        trials=trials,
        trials_per_symbol=tps,
        seed=seed,
        ci95_halfwidth=ci95,
        backend=backend_name,
    )


def sample_trajectories(
    receiver, alpha: float, n: int, seed: int, det: DetectorModel | None = None
) -> list[TrajectoryOutcome]:
    """Replay ``n`` trajectories through the per-step reference path.

    Consumes the same uniforms as ``run_mc`` would for the first ``n``
    trajectories, so decisions coincide with the kernel output.
    """
    plan = _make_plan(receiver, alpha, det, kernels.numpy_backend)
    out = []
    done = 0
    ci = 0
    while done < n:
        take = min(n - done, CHUNK_TRIALS)
        u = _chunk_rng(seed, ci).random((min(CHUNK_TRIALS, max(take, 1)), plan.dpt))
        for i in range(take):
            m = (done + i) % plan.M
            res, clicks = plan.reference(m, u[i])
            dec = int(plan.decision_map[res]) if plan.decision_map is not None else int(res)
            out.append(TrajectoryOutcome(m, tuple(bool(b) for b in clicks), dec))
        done += take
        ci += 1
    return out
