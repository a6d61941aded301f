"""Joint-state assembly, exact QBER, and guessing-probability reports.

The central-node model is qubit-level: Alice's photon arrives unperturbed
(her channel is the reference frame) while Bob's carries the relative
rotation.  The bit error rate of the ideal four-outcome Bell measurement is
the overlap of the joint state with the two error-flagging projectors.

Distinguishability is scored per measured basis: the bit channel compares
Bob sending |1> against |0> read out in Z, the phase channel |+> against
|-> read out in X.  Each trace distance is taken between the measured
(diagonal-in-basis) joint states, which is what an optimal intercepting
observer of that readout can exploit; the corresponding guessing
probability is (1 + T)/2 per channel and their product overall.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .linalg import (
    KET_0,
    KET_1,
    KET_MINUS,
    KET_PLUS,
    UNITARITY_TOL,
    assert_finite,
    dag,
    dephase,
    is_unitary,
    real_trace_overlap,
    tensor,
    trace_distance,
)
from .rotations import AXIS_Y, RotationSpec, su2_from_axis_angle
from .twirl import TwirlSet, conjugated_elements, default_twirl_set


class Basis(enum.Enum):
    Z = "Z"
    X = "X"


class BellState(enum.IntEnum):
    PHI_PLUS = 0
    PHI_MINUS = 1
    PSI_PLUS = 2
    PSI_MINUS = 3

    @property
    def is_psi(self) -> bool:
        """Psi states flag anti-correlated Z bits."""
        return self >= BellState.PSI_PLUS

    @property
    def is_minus(self) -> bool:
        """Minus states flag anti-correlated X bits."""
        return bool(self % 2)

    @property
    def label(self) -> str:
        return ("Phi+", "Phi-", "Psi+", "Psi-")[self]


_S2 = 1.0 / np.sqrt(2.0)
# Rows follow the BellState order Phi+, Phi-, Psi+, Psi-.
BELL_VECTORS = np.array(
    [
        [_S2, 0, 0, _S2],
        [_S2, 0, 0, -_S2],
        [0, _S2, _S2, 0],
        [0, _S2, -_S2, 0],
    ],
    dtype=complex,
)


def bell_vector(state: BellState) -> np.ndarray:
    return BELL_VECTORS[state]


@dataclass(frozen=True)
class BellProjectors:
    """The four rank-1 Bell projectors in BellState order."""

    matrices: np.ndarray  # (4, 4, 4)

    def of(self, state: BellState) -> np.ndarray:
        return self.matrices[state]

    @property
    def error_flagging(self) -> np.ndarray:
        """Sum of the Psi+ and Psi- projectors."""
        return self.matrices[BellState.PSI_PLUS] + self.matrices[BellState.PSI_MINUS]


def bell_projectors() -> BellProjectors:
    mats = np.stack([np.outer(v, v.conj()) for v in BELL_VECTORS])
    mats.flags.writeable = False
    return BellProjectors(mats)


_PROJECTORS = bell_projectors()

# Preparation kets indexed [basis, bit]: Z0, Z1 / X0, X1.
PREP_KETS = np.array([[KET_0, KET_1], [KET_PLUS, KET_MINUS]])


def prepare_ket(basis: Basis, bit: int) -> np.ndarray:
    if bit not in (0, 1):
        raise ValueError("bit must be 0 or 1")
    return PREP_KETS[0 if basis is Basis.Z else 1, bit]


def prepare_state(basis: Basis, bit: int) -> np.ndarray:
    """BB84 signal state as a density matrix: Z0, Z1, X0 = |+>, X1 = |->."""
    k = prepare_ket(basis, bit)
    return np.outer(k, k.conj())


def _require_unitary(u: np.ndarray) -> np.ndarray:
    u = assert_finite(u, "u_rel")
    if not is_unitary(u, UNITARITY_TOL):
        raise ValueError("u_rel is not unitary")
    return u


def qber_exact(u_rel: np.ndarray) -> float:
    """Error rate of the ideal Bell measurement under relative rotation u_rel.

    Both parties send |0>; the joint state is |0><0| tensor (u |0><0| u^dag)
    and the error weight is its overlap with the two Psi projectors.
    """
    u = _require_unitary(u_rel)
    rho_b = u @ np.outer(KET_0, KET_0.conj()) @ dag(u)
    rho_joint = tensor(np.outer(KET_0, KET_0.conj()), rho_b)
    return real_trace_overlap(rho_joint, _PROJECTORS.error_flagging)


def qber_protected_exact(u_rel: np.ndarray, twirl_set: Optional[TwirlSet] = None) -> float:
    """Beacon-averaged error rate: mean of qber_exact over V_k^dag u V_k."""
    u = _require_unitary(u_rel)
    eff = conjugated_elements(u, twirl_set)
    return float(np.mean([qber_exact(eff[k]) for k in range(12)]))


def qber_batch(us: np.ndarray) -> np.ndarray:
    """Vectorized unprotected error rate for a stack of unitaries (N, 2, 2).

    Equals the trace-overlap construction of :func:`qber_exact` because the
    error weight reduces to Bob's flip probability |<1| u |0>|^2.
    """
    us = np.asarray(us, dtype=complex)
    return np.abs(us[:, 1, 0]) ** 2


def qber_protected_batch(us: np.ndarray, twirl_set: Optional[TwirlSet] = None) -> np.ndarray:
    """Vectorized 12-term beacon average of the exact error rate."""
    ts = twirl_set if twirl_set is not None else default_twirl_set()
    v = ts.elements
    # (V_k^dag u V_k)[1, 0] for every sample n and element k.
    amp = np.einsum("ka,nab,kb->nk", v[:, :, 1].conj(), np.asarray(us, complex), v[:, :, 0])
    return np.mean(np.abs(amp) ** 2, axis=1)


@dataclass(frozen=True)
class GuessReport:
    """Trace distances and guessing probabilities for both key channels.

    ``within_validity`` is False when a closed form was evaluated outside its
    non-negativity region and the absolute-value fallback was used.
    """

    t_bit: float
    t_phase: float
    p_guess_bit: float
    p_guess_phase: float
    p_guess_total: float
    within_validity: bool = True


def _report_from_distances(t_bit: float, t_phase: float, valid: bool) -> GuessReport:
    p_bit = 0.5 * (1.0 + t_bit)
    p_phase = 0.5 * (1.0 + t_phase)
    return GuessReport(
        t_bit=t_bit,
        t_phase=t_phase,
        p_guess_bit=p_bit,
        p_guess_phase=p_phase,
        p_guess_total=p_bit * p_phase,
        within_validity=valid,
    )


_Z_KETS = (KET_0, KET_1)
_X_KETS = (KET_PLUS, KET_MINUS)


def _measured_joint(ref_ket: np.ndarray, rho_b: np.ndarray, kets) -> np.ndarray:
    """Joint state with Bob's side reduced to its readout populations."""
    return tensor(np.outer(ref_ket, ref_ket.conj()), dephase(rho_b, kets))


def guess_report_numeric(
    spec: RotationSpec, protected: bool = False, twirl_set: Optional[TwirlSet] = None
) -> GuessReport:
    """Guessing probabilities from explicit 4x4 trace distances.

    The bit channel compares Bob sending |1> against |0>, the phase channel
    |+> against |->.  In protected mode each of Bob's evolved states is
    replaced by its 12-term twirl average before the distance is taken.
    """
    u = su2_from_axis_angle(spec)

    def evolve(ket: np.ndarray) -> np.ndarray:
        rho = np.outer(ket, ket.conj())
        if not protected:
            return u @ rho @ dag(u)
        eff = conjugated_elements(u, twirl_set)
        return np.einsum("kij,jl,kml->im", eff, rho, eff.conj()) / 12.0

    t_bit = trace_distance(
        _measured_joint(KET_0, evolve(KET_1), _Z_KETS),
        _measured_joint(KET_0, evolve(KET_0), _Z_KETS),
    )
    t_phase = trace_distance(
        _measured_joint(KET_PLUS, evolve(KET_PLUS), _X_KETS),
        _measured_joint(KET_PLUS, evolve(KET_MINUS), _X_KETS),
    )
    return _report_from_distances(t_bit, t_phase, valid=True)


def guess_report_analytic(spec: RotationSpec, protected: bool = False) -> GuessReport:
    """Closed-form guessing probabilities.

    Unprotected: T_bit = 1 - 2(1 - n_z^2) sin^2(a/2) and
    T_phase = 1 - 2(1 - n_x^2) sin^2(a/2), valid while non-negative.
    Protected: T = 1 - 4/3 sin^2(a/2) for both channels, valid while
    non-negative (a <= 2*pi/3).  Outside validity the absolute value is
    reported and the report is flagged.
    """
    s2 = np.sin(spec.angle / 2.0) ** 2
    if protected:
        raw = 1.0 - (4.0 / 3.0) * s2
        valid = raw >= 0.0
        t = abs(raw)
        return _report_from_distances(t, t, valid)
    nx, _, nz = spec.axis
    raw_bit = 1.0 - 2.0 * (1.0 - nz**2) * s2
    raw_phase = 1.0 - 2.0 * (1.0 - nx**2) * s2
    valid = raw_bit >= 0.0 and raw_phase >= 0.0
    return _report_from_distances(abs(raw_bit), abs(raw_phase), valid)


def p_guess_total_batch(axes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Vectorized unprotected total guessing probability over (axes, angles)."""
    s2 = np.sin(np.asarray(angles) / 2.0) ** 2
    nx = np.asarray(axes)[:, 0]
    nz = np.asarray(axes)[:, 2]
    return (1.0 - (1.0 - nz**2) * s2) * (1.0 - (1.0 - nx**2) * s2)


def protected_p_guess_envelope(angle: float | np.ndarray) -> np.ndarray:
    """Axis-independent protected envelope (1 - 2/3 sin^2(a/2))^2."""
    s2 = np.sin(np.asarray(angle) / 2.0) ** 2
    return (1.0 - (2.0 / 3.0) * s2) ** 2


# Stress orientations for the unprotected link: GOOD_AXIS maximizes and
# BAD_AXIS minimizes the total guessing probability at fixed angle.
GOOD_AXIS = np.array([1.0, 0.0, 1.0]) / np.sqrt(2.0)
BAD_AXIS = AXIS_Y
