"""Coherent-amplitude algebra for phase-shift-keyed signals.

Every optical state handled by this package is a coherent state, and every
operation (beam splitting, displacement) maps coherent states to coherent
states.  A state is therefore represented by its complex amplitude alone
(units: sqrt(photons)); no Fock-space truncation is ever introduced, so all
probabilities downstream are exact closed forms.

The beam-splitter sign convention is

    B(R) |beta>|gamma> = |sqrt(1-R) beta + sqrt(R) gamma>
                         (x) |-sqrt(R) beta + sqrt(1-R) gamma>

and receiver modules only consume the moduli of residual amplitudes, i.e.
the splitter phase is assumed compensated downstream.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

# A coherent state is fully described by one complex number.
ComplexAmplitude = complex


@dataclass(frozen=True)
class PskConstellation:
    """M-ary PSK alphabet: amplitudes alpha * exp(2*pi*i*m/M), m = 0..M-1."""

    alpha: float
    M: int

    def __post_init__(self):
        if self.alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha}")
        if self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")

    @property
    def unit_root(self) -> complex:
        return cmath.exp(2j * math.pi / self.M)

    def amplitudes(self) -> list[ComplexAmplitude]:
        return [psk_amplitude(self, m) for m in range(self.M)]


def psk_amplitude(c: PskConstellation, m: int) -> ComplexAmplitude:
    """Amplitude of symbol ``m``: alpha rotated by 2*pi*m/M."""
    if not 0 <= m < c.M:
        raise ValueError(f"symbol index {m} out of range for M={c.M}")
    return c.alpha * cmath.exp(2j * math.pi * m / c.M)


def beam_split(
    beta: ComplexAmplitude, gamma: ComplexAmplitude, R: float
) -> tuple[ComplexAmplitude, ComplexAmplitude]:
    """Split/combine two coherent amplitudes on a splitter of reflectance R.

    Returns the transmitted/reflected pair
    ``(sqrt(1-R) beta + sqrt(R) gamma, -sqrt(R) beta + sqrt(1-R) gamma)``.
    Total intensity is conserved.
    """
    if not 0.0 <= R <= 1.0:
        raise ValueError(f"reflectance must lie in [0, 1], got {R}")
    t = math.sqrt(1.0 - R)
    r = math.sqrt(R)
    return (t * beta + r * gamma, -r * beta + t * gamma)


def displace(beta: ComplexAmplitude, gamma: ComplexAmplitude) -> ComplexAmplitude:
    """Displacement: shifts the amplitude, |beta> -> |beta + gamma>."""
    return beta + gamma


def overlap(beta: ComplexAmplitude, gamma: ComplexAmplitude) -> complex:
    """Inner product <beta|gamma> of two coherent states.

    Equals exp(-(|beta|^2 + |gamma|^2)/2 + conj(beta)*gamma); its modulus
    is exp(-|beta-gamma|^2 / 2) <= 1 with equality iff beta == gamma.
    """
    b2 = beta.real * beta.real + beta.imag * beta.imag
    g2 = gamma.real * gamma.real + gamma.imag * gamma.imag
    return cmath.exp(-0.5 * (b2 + g2) + complex(beta).conjugate() * gamma)
