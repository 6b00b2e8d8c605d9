"""Multiport displacement receivers without feedforward.

Two schemes:

* 3PSK, two ports: the input is split with reflectance R into branches A
  and B; branch A is displaced to null symbol 0, branch B to null symbol 1.
  The four raw outcomes (off,on), (on,off), (on,on), (off,off) are mapped
  to symbol estimates by maximum likelihood, with the (off,off) outcome
  assigned to symbol 0 when R >= 1/2 and to symbol 1 otherwise.

* 4PSK, three ports: two splitters (R1, R2) produce branches A, B, C which
  null symbols 0, 2, 1 respectively.  Decisions are sequential: a silent
  branch A decides 0; otherwise a silent B decides 2; otherwise a silent C
  decides 1, else 3.

Displacements may be scaled away from exact nulling (scale 1.0) to trade
residual light on the nulled branch against the other hypotheses; this is
what the weak-signal displacement optimization searches over.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .detection import DetectorModel, p_off_intensity
from .signal_model import PskConstellation

__all__ = [
    "StaticReceiver3",
    "StaticReceiver4",
    "channel_matrix_3psk",
    "decision_channel_3psk",
    "error_rate_3psk",
    "event_probs_4psk",
    "channel_matrix_4psk",
    "error_rate_4psk",
    "optimize_static",
    "OptimizeStaticResult",
]


@dataclass(frozen=True)
class StaticReceiver3:
    """Two-port 3PSK receiver: reflectance and displacement scales per branch."""

    R: float = 0.5
    disp_scale_a: float = 1.0
    disp_scale_b: float = 1.0

    def __post_init__(self):
        if not 0.0 <= self.R <= 1.0:
            raise ValueError(f"R must lie in [0, 1], got {self.R}")


@dataclass(frozen=True)
class StaticReceiver4:
    """Three-port 4PSK receiver; branches null symbols 0, 2, 1 in decision order."""

    R1: float = 2.0 / 3.0
    R2: float = 0.5
    disp_scales: tuple[float, float, float] = (1.0, 1.0, 1.0)

    def __post_init__(self):
        if not (0.0 <= self.R1 <= 1.0 and 0.0 <= self.R2 <= 1.0):
            raise ValueError(f"reflectances must lie in [0, 1], got {(self.R1, self.R2)}")

    def branch_fractions(self) -> tuple[float, float, float]:
        """Intensity fractions of branches A, B, C; they sum to 1."""
        return (self.R1, (1 - self.R1) * self.R2, (1 - self.R1) * (1 - self.R2))


def _branch_intensities_3psk(alpha: float, rx: StaticReceiver3) -> np.ndarray:
    """Residual intensities, shape (3 symbols, 2 branches)."""
    c = PskConstellation(alpha, 3)
    amps = c.amplitudes()
    out = np.empty((3, 2))
    for m in range(3):
        res_a = amps[m] - rx.disp_scale_a * amps[0]
        res_b = amps[m] - rx.disp_scale_b * amps[1]
        out[m, 0] = rx.R * abs(res_a) ** 2
        out[m, 1] = (1 - rx.R) * abs(res_b) ** 2
    return out


def channel_matrix_3psk(alpha: float, rx: StaticReceiver3, det: DetectorModel) -> np.ndarray:
    """Raw-outcome channel matrix, shape (3, 4).

    Columns: 0 = (off, on), 1 = (on, off), 2 = (on, on), 3 = (off, off).
    Rows sum to 1.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    intens = _branch_intensities_3psk(alpha, rx)
    P = np.empty((3, 4))
    for m in range(3):
        qa = p_off_intensity(intens[m, 0], det)
        qb = p_off_intensity(intens[m, 1], det)
        P[m, 0] = qa * (1 - qb)
        P[m, 1] = (1 - qa) * qb
        P[m, 2] = (1 - qa) * (1 - qb)
        P[m, 3] = qa * qb
    return P


def raw_outcome_decisions_3psk(rx: StaticReceiver3) -> list[int]:
    """ML symbol estimate for each raw outcome index 0..3."""
    return [0, 1, 2, 0 if rx.R >= 0.5 else 1]


def decision_channel_3psk(alpha: float, rx: StaticReceiver3, det: DetectorModel) -> np.ndarray:
    """Decided-symbol channel matrix, shape (3, 3)."""
    raw = channel_matrix_3psk(alpha, rx, det)
    dec = raw_outcome_decisions_3psk(rx)
    P = np.zeros((3, 3))
    for o, j in enumerate(dec):
        P[:, j] += raw[:, o]
    return P


def error_rate_3psk(alpha: float, rx: StaticReceiver3, det: DetectorModel) -> float:
    """Average error rate of the two-port receiver under the ML outcome map."""
    P = decision_channel_3psk(alpha, rx, det)
    return 1.0 - float(np.trace(P)) / 3.0


def _branch_intensities_4psk(alpha: float, rx: StaticReceiver4) -> np.ndarray:
    """Residual intensities, shape (4 symbols, 3 branches A/B/C)."""
    c = PskConstellation(alpha, 4)
    amps = c.amplitudes()
    fa, fb, fc = rx.branch_fractions()
    s0, s2, s1 = rx.disp_scales
    out = np.empty((4, 3))
    for m in range(4):
        out[m, 0] = fa * abs(amps[m] - s0 * amps[0]) ** 2
        out[m, 1] = fb * abs(amps[m] - s2 * amps[2]) ** 2
        out[m, 2] = fc * abs(amps[m] - s1 * amps[1]) ** 2
    return out


def event_probs_4psk(alpha: float, rx: StaticReceiver4, det: DetectorModel) -> np.ndarray:
    """Probabilities of the 8 raw click patterns, shape (4, 8).

    Column index is the bit pattern ``cA*4 + cB*2 + cC`` where each bit is 1
    for a click on that branch.  Alternative decision rules can be evaluated
    directly on this table.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    intens = _branch_intensities_4psk(alpha, rx)
    P = np.empty((4, 8))
    for m in range(4):
        q = [p_off_intensity(intens[m, b], det) for b in range(3)]
        for o in range(8):
            bits = ((o >> 2) & 1, (o >> 1) & 1, o & 1)
            pr = 1.0
            for b in range(3):
                pr *= (1 - q[b]) if bits[b] else q[b]
            P[m, o] = pr
    return P


# sequential A->B->C estimate for each raw pattern cA*4 + cB*2 + cC
_SEQ_DECISION_4PSK = [0, 0, 0, 0, 2, 2, 1, 3]


def channel_matrix_4psk(alpha: float, rx: StaticReceiver4, det: DetectorModel) -> np.ndarray:
    """Decided-symbol channel matrix, shape (4, 4), sequential decision rule."""
    raw = event_probs_4psk(alpha, rx, det)
    P = np.zeros((4, 4))
    for o, j in enumerate(_SEQ_DECISION_4PSK):
        P[:, j] += raw[:, o]
    return P


def error_rate_4psk(alpha: float, rx: StaticReceiver4, det: DetectorModel) -> float:
    """Average error rate of the three-port receiver (sequential rule)."""
    P = channel_matrix_4psk(alpha, rx, det)
    return 1.0 - float(np.trace(P)) / 4.0


@dataclass(frozen=True)
class OptimizeStaticResult:
    receiver: object
    pe: float
    converged: bool


_GRID_POINTS = 33


def _refine_nelder_mead(f, x0, bounds):
    lo = np.array([b[0] for b in bounds])
    hi = np.array([b[1] for b in bounds])

    def clipped(x):
        return f(np.clip(x, lo, hi))

    res = optimize.minimize(
        clipped,
        np.asarray(x0, dtype=float),
        method="Nelder-Mead",
        options={"xatol": 1e-10, "fatol": 1e-9, "maxiter": 4000},
    )
    x = np.clip(res.x, lo, hi)
    return x, f(x), bool(res.success)


def optimize_static(
    alpha: float,
    M: int,
    det: DetectorModel,
    optimize_displacements: bool = False,
) -> OptimizeStaticResult:
    """Minimize the static-receiver error rate over its free parameters.

    Coarse grid scan (33 points per dimension) followed by derivative-free
    refinement: golden-section for the single-reflectance search,
    Nelder-Mead otherwise.  Displacement scales, when enabled, are searched
    in [0, 2] around exact nulling.
    """
    if M == 3:
        if not optimize_displacements:
            f = lambda R: error_rate_3psk(alpha, StaticReceiver3(R), det)
            grid = np.linspace(0.0, 1.0, _GRID_POINTS)
            vals = [f(R) for R in grid]
            i = int(np.argmin(vals))
            lo = grid[max(i - 1, 0)]
            hi = grid[min(i + 1, _GRID_POINTS - 1)]
            res = optimize.minimize_scalar(
                f, bracket=None, bounds=(lo, hi), method="bounded",
                options={"xatol": 1e-10},
            )
            best_R, best, ok = float(res.x), float(res.fun), bool(res.success)
            if vals[i] < best:
                best_R, best = float(grid[i]), float(vals[i])
            return OptimizeStaticResult(StaticReceiver3(best_R), best, ok)

        def f3(x):
            return error_rate_3psk(
                alpha, StaticReceiver3(x[0], x[1], x[2]), det
            )

        grid_R = np.linspace(0.0, 1.0, _GRID_POINTS)
        grid_s = np.linspace(0.0, 2.0, _GRID_POINTS)
        best = (np.inf, None)
        for R in grid_R:
            for s in grid_s:
                v = f3((R, s, s))
                if v < best[0]:
                    best = (v, (R, s, s))
        x, val, ok = _refine_nelder_mead(
            f3, best[1], [(0, 1), (0, 2), (0, 2)]
        )
        if best[0] < val:
            x, val = best[1], best[0]
        rx = StaticReceiver3(float(x[0]), float(x[1]), float(x[2]))
        return OptimizeStaticResult(rx, float(val), ok)

    if M == 4:
        if not optimize_displacements:
            def f4(x):
                return error_rate_4psk(alpha, StaticReceiver4(x[0], x[1]), det)

            grid = np.linspace(0.0, 1.0, _GRID_POINTS)
            best = (np.inf, None)
            for R1 in grid:
                for R2 in grid:
                    v = f4((R1, R2))
                    if v < best[0]:
                        best = (v, (R1, R2))
            x, val, ok = _refine_nelder_mead(f4, best[1], [(0, 1), (0, 1)])
            if best[0] < val:
                x, val = best[1], best[0]
            rx = StaticReceiver4(float(x[0]), float(x[1]))
            return OptimizeStaticResult(rx, float(val), ok)

        def f4d(x):
            return error_rate_4psk(
                alpha, StaticReceiver4(x[0], x[1], (x[2], x[3], x[4])), det
            )

        grid = np.linspace(0.0, 1.0, _GRID_POINTS)
        grid_s = np.linspace(0.0, 2.0, 9)
        best = (np.inf, None)
        for R1 in grid:
            for R2 in grid:
                for s in grid_s:
                    v = f4d((R1, R2, s, s, s))
                    if v < best[0]:
                        best = (v, (R1, R2, s, s, s))
        x, val, ok = _refine_nelder_mead(
            f4d, best[1], [(0, 1), (0, 1), (0, 2), (0, 2), (0, 2)]
        )
        if best[0] < val:
            x, val = best[1], best[0]
        rx = StaticReceiver4(float(x[0]), float(x[1]), (float(x[2]), float(x[3]), float(x[4])))
        return OptimizeStaticResult(rx, float(val), ok)

    raise ValueError(f"M must be 3 or 4, got {M}")
