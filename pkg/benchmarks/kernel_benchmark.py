#!/usr/bin/env python3
"""Throughput comparison of the compiled and NumPy Monte Carlo kernels.

Runs each receiver family through both backends on identical uniforms,
checks the outcomes agree bit for bit, and reports trajectories/second.

    python benchmarks/kernel_benchmark.py [--trials N]
"""

import argparse
import time

import numpy as np

from pskrx import kernels
from pskrx.detection import DetectorModel
from pskrx.feedforward import FeedforwardSpec
from pskrx.simulate import _chunk_rng, _make_plan
from pskrx.static_receivers import StaticReceiver3, StaticReceiver4

CASES = [
    ("static 2-port (3PSK)", StaticReceiver3(0.5), DetectorModel(0.9, 1e-6)),
    ("static 3-port (4PSK)", StaticReceiver4(2 / 3, 0.5), DetectorModel(0.9, 1e-6)),
    ("feedforward fixed N=10 (3PSK)",
     FeedforwardSpec(M=3, N=10, detector=DetectorModel(0.9, 1e-6)), None),
    ("feedforward fixed N=10 (4PSK)",
     FeedforwardSpec(M=4, N=10, detector=DetectorModel(0.9, 1e-6)), None),
    ("feedforward posterior-max N=10 (4PSK)",
     FeedforwardSpec(M=4, N=10, policy="map_posterior"), None),
    ("feedforward opt-displacement N=10 (3PSK)",
     FeedforwardSpec(M=3, N=10, policy="optimized_displacement"), None),
]


def bench(plan, u, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = plan.kernel(u, 0)
        best = min(best, time.perf_counter() - t0)
    return np.asarray(out), best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=2_000_000)
    args = ap.parse_args()

    if kernels.BACKEND != "cython":
        print("compiled extension not available; benchmarking NumPy against itself")
    print(f"{'case':42s} {'numpy':>12s} {'compiled':>12s} {'speedup':>8s}")
    for name, receiver, det in CASES:
        plan_c = _make_plan(receiver, 1.0, det, kernels.active_backend)
        plan_n = _make_plan(receiver, 1.0, det, kernels.numpy_backend)
        u = _chunk_rng(0, 0).random((args.trials, plan_c.dpt))
        out_n, t_n = bench(plan_n, u)
        out_c, t_c = bench(plan_c, u)
        assert np.array_equal(out_n, out_c), f"backend mismatch in {name}"
        rate_n = args.trials / t_n / 1e6
        rate_c = args.trials / t_c / 1e6
        print(f"{name:42s} {rate_n:9.1f} M/s {rate_c:9.1f} M/s {t_n / t_c:7.1f}x")


if __name__ == "__main__":
    main()
