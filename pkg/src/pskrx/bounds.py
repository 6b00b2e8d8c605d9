"""Benchmark limits: Helstrom bound, heterodyne (SQL) error rate, and the
large-signal asymptote of the continuous-feedback 4PSK receiver.

The density matrix of an equiprobable M-PSK ensemble is diagonal in the
number-basis sectors modulo M, so its eigenvalues are the discrete Fourier
transform of the pairwise overlaps Gamma_m = <alpha_0|alpha_m>.  The
square-root measurement is optimal for such symmetric pure-state sets and
gives Pe = 1 - (1/M^2) (sum_m sqrt(lambda_m))^2.

The heterodyne benchmark models the dual-quadrature outcome as a complex
value beta with density (1/pi) exp(-|beta - alpha_m|^2); the ML decision
regions are angular wedges of width 2*pi/M.  The radial integral has a
closed form, leaving a one-dimensional adaptive quadrature over the wedge
angle (absolute tolerance well below 1e-10; the Gaussian tail is covered
exactly by the erf term, no radial cutoff error).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .signal_model import PskConstellation, overlap, psk_amplitude

__all__ = [
    "SymmetricEigenvalues",
    "symmetric_eigenvalues",
    "eigenvalues_closed_form",
    "helstrom_psk",
    "heterodyne_wedge_probs",
    "heterodyne_error_rate",
    "bondurant_asymptote",
]


@dataclass(frozen=True)
class SymmetricEigenvalues:
    """Eigenvalues of the (unnormalized) PSK ensemble density operator."""

    lambdas: tuple[float, ...]

    @property
    def M(self) -> int:
        return len(self.lambdas)

    def trace(self) -> float:
        return float(sum(self.lambdas))


def symmetric_eigenvalues(alpha: float, M: int) -> SymmetricEigenvalues:
    """Eigenvalues lambda_k = sum_m u^{-km} <alpha_0|alpha_m>, any M >= 2.

    The imaginary parts cancel by symmetry; tiny negative eigenvalues from
    rounding are clipped to zero.
    """
    c = PskConstellation(alpha, M)
    a0 = psk_amplitude(c, 0)
    gammas = [overlap(a0, psk_amplitude(c, m)) for m in range(M)]
    u = cmath.exp(2j * math.pi / M)
    # cancellation noise of an M-term sum of unit-modulus terms
    floor = M * 1e-14
    lams = []
    for k in range(M):
        s = sum(u ** (-(k * m)) * gammas[m] for m in range(M))
        if abs(s.imag) > 1e-10:
            raise ArithmeticError(f"eigenvalue {k} has residual imaginary part {s.imag}")
        lams.append(s.real if s.real > floor else 0.0)
    return SymmetricEigenvalues(tuple(lams))


def eigenvalues_closed_form(alpha: float, M: int) -> SymmetricEigenvalues:
    """Closed-form eigenvalues for M = 3 and M = 4 (independent route)."""
    a2 = alpha * alpha
    if M == 3:
        kc = math.exp(-1.5 * a2) * math.cos(0.5 * math.sqrt(3.0) * a2)
        ks = math.exp(-1.5 * a2) * math.sin(0.5 * math.sqrt(3.0) * a2)
        lams = (
            1.0 + 2.0 * kc,
            1.0 - kc + math.sqrt(3.0) * ks,
            1.0 - kc - math.sqrt(3.0) * ks,
        )
    elif M == 4:
        e = 2.0 * math.exp(-a2)
        lams = (
            e * (math.cosh(a2) + math.cos(a2)),
            e * (math.sinh(a2) + math.sin(a2)),
            e * (math.cosh(a2) - math.cos(a2)),
            e * (math.sinh(a2) - math.sin(a2)),
        )
    else:
        raise ValueError(f"closed forms available for M in {{3, 4}}, got M={M}")
    return SymmetricEigenvalues(tuple(max(x, 0.0) for x in lams))


def helstrom_psk(alpha: float, M: int) -> float:
    """Minimum attainable average error rate for equiprobable M-PSK.

    Expands (sum_m sqrt(lambda_m))^2 = trace + 2 sum_{i<j} sqrt(lambda_i
    lambda_j) and substitutes the exact trace M, so the alpha = 0 limit
    1 - 1/M is reproduced without rounding.
    """
    roots = [math.sqrt(x) for x in symmetric_eigenvalues(alpha, M).lambdas]
    cross = sum(
        roots[i] * roots[j] for i in range(M) for j in range(i + 1, M)
    )
    pe = (M - 1.0) / M - 2.0 * cross / (M * M)
    return min(max(pe, 0.0), (M - 1.0) / M)


def _angular_density(theta: float, a: float) -> float:
    # marginal angle density of a unit-variance complex Gaussian centred at
    # real amplitude a (radial part integrated in closed form)
    c = a * math.cos(theta)
    return (
        math.exp(-a * a) / (2.0 * math.pi)
        + c / (2.0 * math.sqrt(math.pi))
        * math.exp(-(a * a) * math.sin(theta) ** 2)
        * (1.0 + special.erf(c))
    )


def heterodyne_wedge_probs(alpha: float, M: int) -> np.ndarray:
    """P(outcome falls in the wedge of symbol k | symbol 0 sent), k = 0..M-1."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    if alpha == 0.0:
        # the outcome density is isotropic; wedges are exactly uniform
        return np.full(M, 1.0 / M)
    half = math.pi / M
    out = np.empty(M)
    for k in range(M):
        centre = 2.0 * math.pi * k / M
        if centre > math.pi:
            centre -= 2.0 * math.pi
        val, err = integrate.quad(
            _angular_density,
            centre - half,
            centre + half,
            args=(alpha,),
            epsabs=1e-13,
            epsrel=1e-13,
            limit=200,
        )
        if err > 1e-10:
            raise ArithmeticError(
                f"wedge quadrature tolerance not met: estimated error {err:g}"
            )
        out[k] = val
    return out


def heterodyne_error_rate(alpha: float, M: int) -> float:
    """Symbol error rate of ideal heterodyne detection with ML wedges."""
    return 1.0 - float(heterodyne_wedge_probs(alpha, M)[0])


def bondurant_asymptote(alpha: float) -> float:
    """Large-signal error-rate asymptote of the continuous-feedback 4PSK
    receiver with 0->1->2 nulling: alpha^2 * exp(-2 alpha^2).

    Meaningful only for large alpha^2 (it vanishes at alpha = 0, where the
    actual error rate is 3/4).
    """
    a2 = alpha * alpha
    return a2 * math.exp(-2.0 * a2)
