"""Closed-form vs Monte Carlo cross-validation suite.

Every receiver with an analytic error rate is replayed through the
trajectory sampler on a standard (alpha^2, eta, nu) grid and the two
estimates are compared at 3 sigma of the binomial estimator.  The z-score
uses the exact per-symbol correct-decision probabilities (from the
decision-tree channel matrices), not the empirical ones.

The suite is deterministic for a fixed seed; the CSV it emits is
byte-identical across runs and worker counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import feedforward as ff
from .detection import DetectorModel
from .simulate import pe_sigma, run_mc
from .static_receivers import (
    StaticReceiver3,
    StaticReceiver4,
    channel_matrix_4psk,
    decision_channel_3psk,
    error_rate_3psk,
    error_rate_4psk,
)

__all__ = [
    "ValidationCell",
    "run_validation",
    "validation_to_csv",
    "DEFAULT_ALPHA_SQ_GRID",
    "DEFAULT_ETAS",
    "DEFAULT_NUS",
    "DEFAULT_SEED",
]

DEFAULT_ALPHA_SQ_GRID = (0.25, 0.5, 1.0, 2.0, 5.0, 10.0)
DEFAULT_ETAS = (0.8, 0.9, 1.0)
DEFAULT_NUS = (0.0, 1e-6)
DEFAULT_SEED = 20260810


@dataclass(frozen=True)
class ValidationCell:
    receiver_id: str
    alpha_sq: float
    eta: float
    nu: float
    trials: int
    analytic_pe: float
    mc_pe: float
    sigma: float
    zscore: float
    passed: bool


def _cases(alpha: float, det: DetectorModel, N: int):
    """(receiver_id, receiver object, analytic Pe, exact channel) quadruples
    supported at this detector setting."""
    out = []
    rx3 = StaticReceiver3(0.5)
    out.append(
        ("static3-R0.5", rx3, error_rate_3psk(alpha, rx3, det),
         decision_channel_3psk(alpha, rx3, det), det)
    )
    rx4 = StaticReceiver4(2.0 / 3.0, 0.5)
    out.append(
        ("static4-equal", rx4, error_rate_4psk(alpha, rx4, det),
         channel_matrix_4psk(alpha, rx4, det), det)
    )
    f3 = ff.FeedforwardSpec(M=3, N=N, detector=det)
    out.append(
        (f"ff3-N{N}", f3, ff.error_rate_3psk_ff(alpha, f3),
         ff.channel_matrix_ff(alpha, f3), det)
    )
    f4 = ff.FeedforwardSpec(M=4, N=N, detector=det)
    out.append(
        (f"ff4-N{N}", f4, ff.error_rate_4psk_ff(alpha, f4),
         ff.channel_matrix_ff(alpha, f4), det)
    )
    if det.nu == 0.0:
        fod = ff.FeedforwardSpec(M=3, N=N, policy="optimized_displacement", detector=det)
        out.append(
            (f"ffod3-N{N}", fod, ff.error_rate_3psk_ff_optdisp(alpha, N, det.eta),
             ff.channel_matrix_ff(alpha, fod), det)
        )
    if det.is_ideal:
        fmap = ff.FeedforwardSpec(M=4, N=N, policy="map_posterior", detector=det)
        out.append(
            (f"ffmap4-N{N}", fmap, ff.error_rate_4psk_map(alpha, N),
             ff.channel_matrix_ff(alpha, fmap), det)
        )
    return out


def run_validation(
    trials: int = 1_000_000,
    seed: int = DEFAULT_SEED,
    alpha_sq_grid=DEFAULT_ALPHA_SQ_GRID,
    etas=DEFAULT_ETAS,
    nus=DEFAULT_NUS,
    N: int = 10,
    workers: int = 1,
) -> list[ValidationCell]:
    cells = []
    for a2 in alpha_sq_grid:
        alpha = math.sqrt(a2)
        for eta in etas:
            for nu in nus:
                det = DetectorModel(eta, nu)
                for rid, receiver, pe_analytic, channel, rdet in _cases(alpha, det, N):
                    res = run_mc(receiver, alpha, trials, seed, det=rdet, workers=workers)
                    sigma = pe_sigma(channel, res.trials_per_symbol)
                    diff = abs(res.pe - pe_analytic)
                    if sigma > 0.0:
                        z = diff / sigma
                        ok = z < 3.0
                    else:
                        z = 0.0 if diff == 0.0 else math.inf
                        ok = diff == 0.0
                    cells.append(
                        ValidationCell(rid, a2, eta, nu, trials,
                                       pe_analytic, res.pe, sigma, z, ok)
                    )
    return cells


def _g(x: float) -> str:
    return f"{x:.12g}"


def validation_to_csv(cells: list[ValidationCell]) -> str:
    lines = ["receiver,alpha_sq,eta,nu,trials,analytic_pe,mc_pe,sigma,zscore,pass"]
    for c in cells:
        lines.append(
            ",".join(
                [
                    c.receiver_id,
                    _g(c.alpha_sq),
                    _g(c.eta),
                    _g(c.nu),
                    str(c.trials),
                    _g(c.analytic_pe),
                    _g(c.mc_pe),
                    _g(c.sigma),
                    _g(c.zscore),
                    "1" if c.passed else "0",
                ]
            )
        )
    return "\n".join(lines) + "\n"
