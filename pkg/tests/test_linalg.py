"""Exact linear-algebra layer: Kronecker products, eigenvalues, distances."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twirlqkd.linalg import (
    I2,
    I4,
    KET_PLUS,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    assert_finite,
    dag,
    dephase,
    hermitian_eigenvalues,
    is_density,
    is_unitary,
    tensor,
    trace_distance,
)
from twirlqkd.rotations import su2_batch


def random_axes(rng, n):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def random_density(rng):
    r = random_axes(rng, 1)[0] * rng.uniform(0, 1)
    return 0.5 * (I2 + r[0] * PAULI_X + r[1] * PAULI_Y + r[2] * PAULI_Z)


class TestTensor:
    def test_identity(self):
        np.testing.assert_allclose(tensor(I2, I2), I4, atol=0)

    def test_diagonal_product(self):
        np.testing.assert_allclose(tensor(PAULI_Z, PAULI_Z), np.diag([1, -1, -1, 1.0]), atol=0)

    def test_basis_projector(self):
        p0 = np.diag([1.0, 0]).astype(complex)
        flipped = PAULI_X @ p0 @ PAULI_X
        expected = np.zeros((4, 4), dtype=complex)
        expected[1, 1] = 1.0
        np.testing.assert_allclose(tensor(p0, flipped), expected, atol=0)

    @settings(max_examples=25, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_mixed_product_rule(self, seed):
        """tensor(a, b) @ tensor(c, d) == tensor(a @ c, b @ d)."""
        rng = np.random.default_rng(seed)
        a, b, c, d = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2)) for _ in range(4))
        np.testing.assert_allclose(
            tensor(a, b) @ tensor(c, d), tensor(a @ c, b @ d), atol=1e-12
        )


class TestHermitianEigenvalues:
    def test_diagonal(self):
        np.testing.assert_allclose(
            hermitian_eigenvalues(np.diag([4.0, 2, 1, 3]).astype(complex)), [1, 2, 3, 4], atol=0
        )

    def test_rank_one_projector(self):
        psi_plus = np.array([0, 1, 1, 0], dtype=complex) / np.sqrt(2)
        proj = np.outer(psi_plus, psi_plus.conj())
        np.testing.assert_allclose(hermitian_eigenvalues(proj), [0, 0, 0, 1], atol=1e-14)

    def test_rejects_non_hermitian_with_diagnostic(self):
        m = np.array([[0, 1], [0, 0]], dtype=complex)
        with pytest.raises(ValueError, match=r"max\|m - m\^dag\|"):
            hermitian_eigenvalues(m)

    def test_phase_channel_difference_spectrum(self):
        """The X-basis readout difference of U|+> vs U|->, embedded jointly,
        has spectrum {+-T, 0, 0} with T = |1 - 2(1 - n_x^2) sin^2(a/2)|."""
        rng = np.random.default_rng(42)
        ref = np.outer(KET_PLUS, KET_PLUS.conj())
        x_kets = (np.array([1, 1], dtype=complex) / np.sqrt(2), np.array([1, -1], dtype=complex) / np.sqrt(2))
        for _ in range(20):
            axis = random_axes(rng, 1)[0]
            angle = rng.uniform(0, np.pi)
            u = su2_batch(axis[None, :], np.array([angle]))[0]
            diff = tensor(ref, dephase(u @ PAULI_X @ dag(u), x_kets))
            t_phase = abs(1 - 2 * (1 - axis[0] ** 2) * np.sin(angle / 2) ** 2)
            np.testing.assert_allclose(
                hermitian_eigenvalues(diff), sorted([-t_phase, 0, 0, t_phase]), atol=1e-12
            )

    def test_recovers_diagonal_under_conjugation(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            d = np.sort(rng.standard_normal(2))
            u = su2_batch(random_axes(rng, 1), rng.uniform(0, np.pi, 1))[0]
            m = u @ np.diag(d).astype(complex) @ dag(u)
            np.testing.assert_allclose(hermitian_eigenvalues(m), d, atol=1e-10)


class TestTraceDistance:
    def test_identical_states(self):
        rho = np.diag([0.25, 0.75]).astype(complex)
        assert trace_distance(rho, rho) == 0.0

    def test_orthogonal_pure_states(self):
        assert trace_distance(np.diag([1.0, 0]).astype(complex), np.diag([0, 1.0]).astype(complex)) == pytest.approx(1.0)

    def test_depolarized_against_pure(self):
        # difference eta*(|0><0| - I/2) = eta*diag(1/2, -1/2): eigenvalues +-eta/2
        for eta in (0.1, 0.5, 4 / 3):
            pure = np.diag([1.0, 0]).astype(complex)
            mixed = (1 - eta) * pure + eta * I2 / 2
            assert trace_distance(pure, mixed) == pytest.approx(eta / 2, abs=1e-14)

    def test_symmetry_and_triangle(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            a, b, c = (random_density(rng) for _ in range(3))
            assert trace_distance(a, b) == pytest.approx(trace_distance(b, a), abs=1e-10)
            assert trace_distance(a, c) <= trace_distance(a, b) + trace_distance(b, c) + 1e-10

    def test_rejects_non_density(self):
        with pytest.raises(ValueError, match="not a density"):
            trace_distance(2 * I2, I2 / 2)


class TestPredicates:
    def test_thousand_axis_angle_unitaries(self):
        rng = np.random.default_rng(5)
        us = su2_batch(random_axes(rng, 1000), rng.uniform(0, np.pi, 1000))
        for u in us:
            assert np.max(np.abs(u @ dag(u) - I2)) <= 1e-12

    def test_is_density(self):
        assert is_density(I2 / 2)
        assert not is_density(I2)  # trace 2
        assert not is_density(np.diag([1.5, -0.5]).astype(complex))  # negative eigenvalue

    def test_is_unitary(self):
        assert is_unitary(PAULI_Y)
        assert not is_unitary(0.5 * PAULI_Y)

    def test_assert_finite(self):
        with pytest.raises(ValueError, match="non-finite"):
            assert_finite(np.array([[np.nan, 0], [0, 0]]))
