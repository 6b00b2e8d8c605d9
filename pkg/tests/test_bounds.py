"""Benchmark limits: eigenvalue routes, Helstrom values and scalings,
heterodyne wedge model, and the continuous-feedback asymptote."""

import math

import numpy as np
import pytest
from scipy import special

from pskrx.bounds import (
    bondurant_asymptote,
    eigenvalues_closed_form,
    helstrom_psk,
    heterodyne_error_rate,
    heterodyne_wedge_probs,
    symmetric_eigenvalues,
)


def test_eigenvalues_alpha_zero():
    lams = symmetric_eigenvalues(0.0, 3).lambdas
    assert lams[0] == pytest.approx(3.0, abs=1e-12)
    assert lams[1] == 0.0 and lams[2] == 0.0


def test_eigenvalue_routes_agree():
    for M in (3, 4):
        for a2 in (0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0):
            dft = symmetric_eigenvalues(math.sqrt(a2), M).lambdas
            closed = eigenvalues_closed_form(math.sqrt(a2), M).lambdas
            for x, y in zip(dft, closed):
                assert x == pytest.approx(y, abs=1e-12)


def test_eigenvalue_trace():
    rng = np.random.default_rng(5)
    for _ in range(20):
        M = int(rng.integers(2, 9))
        alpha = float(rng.uniform(0, 3))
        assert symmetric_eigenvalues(alpha, M).trace() == pytest.approx(M, abs=1e-10)


def test_helstrom_alpha_zero_exact():
    assert helstrom_psk(0.0, 3) == 2 / 3
    assert helstrom_psk(0.0, 4) == 3 / 4


def test_helstrom_large_signal_scalings():
    a2 = 8.0
    alpha = math.sqrt(a2)
    assert helstrom_psk(alpha, 3) / (0.5 * math.exp(-3 * a2)) == pytest.approx(1.0, abs=0.2)
    assert helstrom_psk(alpha, 4) / (0.5 * math.exp(-2 * a2)) == pytest.approx(1.0, abs=0.2)


def test_helstrom_below_heterodyne():
    for M in (3, 4):
        for a2 in (0.25, 0.5, 1.0, 2.0, 5.0, 10.0):
            alpha = math.sqrt(a2)
            assert helstrom_psk(alpha, M) <= heterodyne_error_rate(alpha, M) + 1e-12


def test_wedges_sum_to_one_and_alpha_zero_uniform():
    for M in (3, 4, 6):
        w0 = heterodyne_wedge_probs(0.0, M)
        np.testing.assert_allclose(w0, 1.0 / M, atol=1e-12)
        w = heterodyne_wedge_probs(1.3, M)
        assert w.sum() == pytest.approx(1.0, abs=1e-10)
        assert heterodyne_error_rate(0.0, M) == pytest.approx(1 - 1 / M, abs=1e-12)


def test_wedge_mirror_symmetry():
    # wedges at +k and -k are mirror images about the real axis
    w = heterodyne_wedge_probs(1.7, 4)
    assert w[1] == pytest.approx(w[3], abs=1e-12)
    w3 = heterodyne_wedge_probs(0.9, 3)
    assert w3[1] == pytest.approx(w3[2], abs=1e-12)


def test_heterodyne_4psk_quadrant_closed_form():
    # for M=4 the wedges are quadrants: Pe = 1 - (1 - Q(alpha))^2 with
    # Q the Gaussian tail of a unit-variance quadrature pair
    for a2 in (0.5, 2.0, 4.0, 10.0):
        alpha = math.sqrt(a2)
        q = 0.5 * special.erfc(alpha / math.sqrt(2.0))
        expected = 1.0 - (1.0 - q) ** 2
        assert heterodyne_error_rate(alpha, 4) == pytest.approx(expected, abs=1e-10)


def test_heterodyne_monte_carlo_cross_check():
    # sample the complex Gaussian outcome model directly
    rng = np.random.default_rng(77)
    a2, M = 4.0, 4
    alpha = math.sqrt(a2)
    n = 2_000_000
    beta = alpha + rng.normal(0, math.sqrt(0.5), n) + 1j * rng.normal(0, math.sqrt(0.5), n)
    ang = np.abs(np.angle(beta))
    correct = (ang < math.pi / M).mean()
    pe_mc = 1.0 - correct
    pe = heterodyne_error_rate(alpha, M)
    sigma = math.sqrt(pe * (1 - pe) / n)
    assert abs(pe_mc - pe) < 4 * sigma


def _fock_coherent(alpha: complex, dim: int) -> np.ndarray:
    n = np.arange(dim)
    logs = n * math.log(max(abs(alpha), 1e-300)) - 0.5 * np.cumsum(
        np.log(np.maximum(n, 1))
    )
    return np.exp(-abs(alpha) ** 2 / 2 + logs) * np.exp(1j * np.angle(alpha) * n)


def test_helstrom_sdp_oracle():
    """Independent check that the eigenvalue formula is the true optimum:
    minimize tr(Y) over Y >= rho_m/M (the dual of the discrimination
    problem) in a truncated number basis."""
    cp = pytest.importorskip("cvxpy")
    dim = 40  # truncation error ~1e-13 at alpha^2 <= 1
    for M in (3, 4):
        for a2 in (0.5, 1.0):
            alpha = math.sqrt(a2)
            states = [
                _fock_coherent(alpha * np.exp(2j * np.pi * m / M), dim) for m in range(M)
            ]
            Y = cp.Variable((dim, dim), hermitian=True)
            cons = [Y >> cp.Constant(np.outer(s, s.conj()) / M) for s in states]
            prob = cp.Problem(cp.Minimize(cp.real(cp.trace(Y))), cons)
            prob.solve(solver=cp.SCS, eps=1e-9, max_iters=200_000)
            assert 1.0 - prob.value == pytest.approx(helstrom_psk(alpha, M), abs=1e-7)


def test_fock_representation_consistency():
    # the truncated number-basis vectors reproduce the analytic overlaps
    from pskrx.signal_model import overlap

    a = 0.9 * np.exp(0.4j)
    b = 1.3 * np.exp(-1.1j)
    va = _fock_coherent(a, 60)
    vb = _fock_coherent(b, 60)
    assert np.vdot(va, vb) == pytest.approx(overlap(a, b), abs=1e-12)


def test_bondurant_asymptote():
    assert bondurant_asymptote(0.0) == 0.0
    a2 = 8.0
    from pskrx.feedforward import error_rate_4psk_ff_asymptotic

    ratio = error_rate_4psk_ff_asymptotic(math.sqrt(a2)) / bondurant_asymptote(math.sqrt(a2))
    assert ratio == pytest.approx(1.5, rel=0.05)
    grid = np.linspace(0.8, 5.0, 40)
    vals = [bondurant_asymptote(math.sqrt(a)) for a in grid]
    assert all(b < a for a, b in zip(vals, vals[1:]))
