"""On/off photon detector model: efficiency and dark counts.

The detector distinguishes only "no photon" from "at least one photon".
For a coherent state of intensity ``I = |amp|^2`` the no-click probability
is ``exp(-nu - eta * I)``: the dark-count parameter ``nu`` enters as an
exponent (per detection window), not as an additive probability, so the
vacuum no-click probability is exactly ``exp(-nu)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .signal_model import ComplexAmplitude


@dataclass(frozen=True)
class DetectorModel:
    """On/off detector with quantum efficiency ``eta`` and dark-count exponent ``nu``."""

    eta: float = 1.0
    nu: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {self.eta}")
        if self.nu < 0.0:
            raise ValueError(f"nu must be >= 0, got {self.nu}")

    @property
    def is_ideal(self) -> bool:
        return self.eta == 1.0 and self.nu == 0.0


IDEAL_DETECTOR = DetectorModel(1.0, 0.0)


def p_off_intensity(intensity: float, det: DetectorModel) -> float:
    """No-click probability for a coherent state of the given intensity."""
    return math.exp(-det.nu - det.eta * intensity)


def p_off(amp: ComplexAmplitude, det: DetectorModel) -> float:
    """No-click probability for coherent amplitude ``amp``."""
    a = complex(amp)
    return p_off_intensity(a.real * a.real + a.imag * a.imag, det)


def sample_click(amp: ComplexAmplitude, det: DetectorModel, rng: np.random.Generator) -> bool:
    """Draw one detector outcome; True means a click ("on")."""
    return rng.random() >= p_off(amp, det)
