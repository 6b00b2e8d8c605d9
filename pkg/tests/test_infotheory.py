"""Mutual information and measurement channels (USD, heterodyne wedges,
symmetric optimal-measurement model)."""

import math

import numpy as np
import pytest

from pskrx.infotheory import (
    helstrom_channel,
    heterodyne_channel,
    heterodyne_mutual_information,
    mutual_information,
    uniform_priors,
    usd_channel,
    usd_mutual_information,
    usd_povm,
    validate_channel,
)


def test_identity_channel():
    assert mutual_information(uniform_priors(4), np.eye(4)) == pytest.approx(2.0)


def test_uniform_channel_has_zero_information():
    P = np.full((3, 5), 1 / 5)
    assert mutual_information(uniform_priors(3), P) == 0.0


def test_binary_symmetric_channel():
    eps = 0.11
    P = np.array([[1 - eps, eps], [eps, 1 - eps]])
    h2 = -eps * math.log2(eps) - (1 - eps) * math.log2(1 - eps)
    assert mutual_information([0.5, 0.5], P) == pytest.approx(1 - h2, abs=1e-12)


def test_validation_errors():
    with pytest.raises(ValueError):
        validate_channel(np.array([[0.5, 0.4], [0.5, 0.5]]))
    with pytest.raises(ValueError):
        mutual_information([0.5, 0.6], np.eye(2))
    with pytest.raises(ValueError):
        mutual_information([0.5, 0.5], np.eye(3))


def test_usd_degenerate_at_alpha_zero():
    povm = usd_povm(0.0, 3)
    assert povm.success == 0.0
    P = usd_channel(0.0, 3)
    np.testing.assert_allclose(P[:, 3], 1.0)
    assert usd_mutual_information(0.0, 3) == 0.0


def test_usd_success_is_min_eigenvalue():
    from pskrx.bounds import eigenvalues_closed_form

    for M in (3, 4):
        for a2 in (0.5, 1.0, 2.0):
            povm = usd_povm(math.sqrt(a2), M)
            assert povm.success == pytest.approx(
                min(eigenvalues_closed_form(math.sqrt(a2), M).lambdas), abs=1e-12
            )
            assert 0.0 <= povm.success <= 1.0


def test_usd_success_approaches_one():
    assert usd_povm(math.sqrt(30.0), 3).success == pytest.approx(1.0, abs=1e-6)


def test_usd_channel_unambiguous():
    P = usd_channel(1.0, 4)
    off_diag = P[:, :4] - np.diag(np.diag(P[:, :4]))
    np.testing.assert_allclose(off_diag, 0.0, atol=1e-15)
    np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-12)


def test_usd_mutual_information_closed_form():
    for M in (3, 4):
        for a2 in (0.5, 1.0, 3.0):
            povm = usd_povm(math.sqrt(a2), M)
            assert usd_mutual_information(math.sqrt(a2), M) == pytest.approx(
                povm.success * math.log2(M), abs=1e-12
            )


def test_usd_povm_from_reciprocal_states():
    """Construct the measurement explicitly in the ensemble eigenbasis and
    check it reproduces the unambiguous channel.

    In that basis the signals are (1/sqrt(M)) sum_k u^{mk} sqrt(lambda_k)
    |w_k> and the reciprocal vectors carry 1/sqrt(lambda_k); their mutual
    overlaps are sqrt(M/Lambda) delta, the induced channel is
    success*identity plus an inconclusive column, and the leftover
    operator stays positive semidefinite.
    """
    from pskrx.bounds import symmetric_eigenvalues
    from pskrx.signal_model import PskConstellation, overlap

    for M in (3, 4):
        for a2 in (0.5, 1.0, 3.0):
            alpha = math.sqrt(a2)
            lams = np.array(symmetric_eigenvalues(alpha, M).lambdas)
            u = np.exp(2j * np.pi / M)
            k = np.arange(M)
            signals = np.stack(
                [np.sqrt(lams) * u ** (m * k) / math.sqrt(M) for m in range(M)]
            )
            # representation reproduces the coherent-state Gram matrix
            amps = PskConstellation(alpha, M).amplitudes()
            for m in range(M):
                for mp in range(M):
                    assert np.vdot(signals[m], signals[mp]) == pytest.approx(
                        overlap(amps[m], amps[mp]), abs=1e-10
                    )
            big = float((1.0 / lams).sum())
            recip = np.stack(
                [u ** (m * k) / np.sqrt(lams) / math.sqrt(big) for m in range(M)]
            )
            for m in range(M):
                for mp in range(M):
                    expect = math.sqrt(M / big) if m == mp else 0.0
                    assert np.vdot(recip[m], signals[mp]) == pytest.approx(
                        expect, abs=1e-10
                    )
            povm = usd_povm(alpha, M)
            ops = [
                big / M * povm.success * np.outer(r, r.conj()) for r in recip
            ]
            chan = usd_channel(alpha, M)
            for m in range(M):
                for mp in range(M):
                    got = float(np.real(signals[m].conj() @ ops[mp] @ signals[m]))
                    assert got == pytest.approx(chan[m, mp], abs=1e-10)
            leftover = np.eye(M) - sum(ops)
            assert np.linalg.eigvalsh(leftover).min() > -1e-10


def test_heterodyne_information_limits():
    for M in (3, 4):
        assert heterodyne_mutual_information(0.0, M) == 0.0
        assert heterodyne_mutual_information(math.sqrt(25.0), M) == pytest.approx(
            math.log2(M), abs=1e-3
        )


def test_heterodyne_channel_is_circulant():
    P = heterodyne_channel(1.2, 4)
    w = P[0]
    for m in range(4):
        np.testing.assert_allclose(P[m], np.roll(w, m), atol=1e-15)


def test_helstrom_channel_model():
    P = helstrom_channel(1.0, 3)
    np.testing.assert_allclose(P.sum(axis=1), 1.0, atol=1e-12)
    mi = mutual_information(uniform_priors(3), P)
    assert 0.0 < mi < math.log2(3)


def test_feedforward_information_beats_usd_for_weak_signals():
    from pskrx.feedforward import FeedforwardSpec, channel_matrix_ff

    for M in (3, 4):
        for a2 in (0.25, 0.5, 1.0, 2.0):
            alpha = math.sqrt(a2)
            ff_mi = mutual_information(
                uniform_priors(M), channel_matrix_ff(alpha, FeedforwardSpec(M=M, N=10))
            )
            assert ff_mi >= usd_mutual_information(alpha, M)


def test_receiver_information_non_decreasing_in_signal_power():
    from pskrx.feedforward import FeedforwardSpec, channel_matrix_ff
    from pskrx.static_receivers import StaticReceiver3, decision_channel_3psk

    grid = [0.0, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0]
    from pskrx.detection import IDEAL_DETECTOR

    for channel_fn, M in (
        (lambda a: decision_channel_3psk(a, StaticReceiver3(0.5), IDEAL_DETECTOR), 3),
        (lambda a: channel_matrix_ff(a, FeedforwardSpec(M=3, N=5)), 3),
        (lambda a: channel_matrix_ff(a, FeedforwardSpec(M=4, N=6)), 4),
    ):
        mis = [mutual_information(uniform_priors(M), channel_fn(math.sqrt(a2))) for a2 in grid]
        assert all(b >= a - 1e-12 for a, b in zip(mis, mis[1:]))


def test_information_bounded_by_log_m():
    for M in (3, 4):
        for a2 in (0.25, 1.0, 4.0):
            for P in (
                usd_channel(math.sqrt(a2), M),
                heterodyne_channel(math.sqrt(a2), M),
                helstrom_channel(math.sqrt(a2), M),
            ):
                mi = mutual_information(uniform_priors(M), P)
                assert 0.0 <= mi <= math.log2(M) + 1e-12
