"""Exact complex linear algebra for 2x2 and 4x4 matrices.

Everything here operates on plain ``numpy.complex128`` arrays.  The rest of
the package only ever needs dense 2x2 (single polarization qubit) and 4x4
(joint two-photon) matrices, so no attempt is made at generality beyond
that: Kronecker products, Hermitian eigenvalues, and the trace distance.

All numeric tolerances live in the constants below so audits have a single
knob to turn.
"""

from __future__ import annotations

import numpy as np

# Tolerance for accepting a matrix as unitary / Hermitian / a density matrix.
UNITARITY_TOL = 1e-10
HERMITICITY_TOL = 1e-10
DENSITY_TOL = 1e-10
# Accuracy demanded of eigenvalues of well-conditioned 4x4 Hermitian input.
EIG_TOL = 1e-12
# Largest imaginary residue tolerated when a trace overlap must be real.
IMAG_RESIDUE_TOL = 1e-10

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)

KET_0 = np.array([1, 0], dtype=complex)
KET_1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def assert_finite(m: np.ndarray, what: str = "matrix") -> np.ndarray:
    """Reject NaN/Inf components at construction boundaries."""
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError(f"{what} contains non-finite entries")
    return m


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with basis order |00>, |01>, |10>, |11>."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def is_unitary(m: np.ndarray, tol: float = UNITARITY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    return bool(np.max(np.abs(m @ dag(m) - np.eye(n))) <= tol)


def is_density(m: np.ndarray, tol: float = DENSITY_TOL) -> bool:
    """Hermitian, unit trace, and eigenvalues >= -tol."""
    m = np.asarray(m, dtype=complex)
    if np.max(np.abs(m - dag(m))) > tol:
        return False
    if abs(np.trace(m) - 1.0) > tol:
        return False
    return bool(np.min(np.linalg.eigvalsh(m)) >= -tol)


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, ascending.

    Non-Hermitian input is rejected with the offending deviation norm in the
    message, since silently symmetrizing would mask upstream bugs.
    """
    m = np.asarray(m, dtype=complex)
    dev = float(np.max(np.abs(m - dag(m))))
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian: max|m - m^dag| = {dev:.3e} > {tol:.1e}")
    return np.linalg.eigvalsh(m)


def trace_distance(r1: np.ndarray, r2: np.ndarray) -> float:
    """T(r1, r2) = (1/2) sum_i |lambda_i(r1 - r2)| for density matrices."""
    r1 = np.asarray(r1, dtype=complex)
    r2 = np.asarray(r2, dtype=complex)
    for name, r in (("r1", r1), ("r2", r2)):
        if not is_density(r):
            raise ValueError(f"{name} is not a density matrix")
    return float(0.5 * np.sum(np.abs(hermitian_eigenvalues(r1 - r2))))


def dephase(rho: np.ndarray, kets: tuple[np.ndarray, ...]) -> np.ndarray:
    """Project onto the diagonal of the orthonormal basis spanned by ``kets``.

    This is the measured-statistics reduction: the output carries exactly the
    outcome populations of a projective measurement in that basis.
    """
    rho = np.asarray(rho, dtype=complex)
    out = np.zeros_like(rho)
    for e in kets:
        p = np.outer(e, e.conj())
        out += p @ rho @ p
    return out


def real_trace_overlap(rho: np.ndarray, op: np.ndarray) -> float:
    """Tr(rho @ op), asserting the imaginary residue is numerical noise."""
    val = complex(np.trace(np.asarray(rho) @ np.asarray(op)))
    if abs(val.imag) > IMAG_RESIDUE_TOL:
        raise ArithmeticError(f"trace overlap has imaginary residue {val.imag:.3e}")
    return val.real
