"""Coherent-amplitude algebra: exact values and algebraic invariants."""

import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pskrx.signal_model import (
    PskConstellation,
    beam_split,
    displace,
    overlap,
    psk_amplitude,
)

finite_amp = st.complex_numbers(
    min_magnitude=0.0, max_magnitude=30.0, allow_nan=False, allow_infinity=False
)


def test_psk_amplitude_examples():
    assert psk_amplitude(PskConstellation(1.0, 4), 0) == pytest.approx(1 + 0j)
    assert psk_amplitude(PskConstellation(1.0, 4), 2) == pytest.approx(-1 + 0j, abs=1e-15)
    got = psk_amplitude(PskConstellation(2.0, 3), 1)
    assert got == pytest.approx(complex(-1.0, math.sqrt(3)), abs=1e-12)


def test_psk_amplitude_range_check():
    c = PskConstellation(1.0, 3)
    with pytest.raises(ValueError):
        psk_amplitude(c, 3)
    with pytest.raises(ValueError):
        psk_amplitude(c, -1)


def test_constellation_validation():
    with pytest.raises(ValueError):
        PskConstellation(-1.0, 3)
    with pytest.raises(ValueError):
        PskConstellation(1.0, 1)


def test_all_amplitudes_have_modulus_alpha():
    for M in (2, 3, 4, 7):
        c = PskConstellation(1.7, M)
        for a in c.amplitudes():
            assert abs(a) == pytest.approx(1.7, abs=1e-12)


def test_beam_split_examples():
    beta = 0.8 + 0.3j
    assert beam_split(beta, 0.0, 0.0) == (beta, 0.0)
    out = beam_split(beta, 0.0, 1.0)
    assert out[0] == pytest.approx(0.0)
    assert out[1] == pytest.approx(-beta)
    out = beam_split(1.0, 1.0, 0.5)
    assert out[0] == pytest.approx(math.sqrt(2.0))
    assert out[1] == pytest.approx(0.0, abs=1e-15)


def test_beam_split_rejects_bad_reflectance():
    with pytest.raises(ValueError):
        beam_split(1.0, 0.0, 1.5)


def test_displace_examples():
    assert displace(1 + 0j, -1 + 0j) == 0
    assert displace(1 + 2j, 3 - 1j) == 4 + 1j


def test_overlap_examples():
    assert overlap(0.7 - 0.2j, 0.7 - 0.2j) == pytest.approx(1.0)
    assert overlap(0.0, 1.0) == pytest.approx(math.exp(-0.5))
    assert overlap(1.0, -1.0) == pytest.approx(math.exp(-2.0))


@given(finite_amp, finite_amp)
def test_overlap_modulus_bounded(beta, gamma):
    mod = abs(overlap(beta, gamma))
    assert mod <= 1.0 + 1e-12
    # modulus is exp(-|beta-gamma|^2/2): equality only at coincidence
    if abs(beta - gamma) > 1e-6:
        assert mod < 1.0


@given(finite_amp, finite_amp, st.floats(0.0, 1.0))
def test_beam_split_preserves_intensity(beta, gamma, R):
    o1, o2 = beam_split(beta, gamma, R)
    before = abs(beta) ** 2 + abs(gamma) ** 2
    after = abs(o1) ** 2 + abs(o2) ** 2
    assert after == pytest.approx(before, abs=1e-12 * max(1.0, before))


@given(st.floats(0.0, 10.0), st.integers(2, 8))
def test_rotation_group_closure(alpha, M):
    c = PskConstellation(alpha, M)
    a = psk_amplitude(c, 0)
    rot = cmath.exp(2j * math.pi / M)
    for _ in range(M):
        a = a * rot
    assert a == pytest.approx(psk_amplitude(c, 0), abs=1e-10 * max(1.0, alpha))
