"""The 12-element unitary 2-design and the depolarizing twirl it induces.

The set splits into three groups of four: the Pauli operators (with phases
chosen so every entry is a multiple of 1 or i), four Clifford rotations by
2*pi/3 about body diagonals of the Bloch cube, and their four inverses.
Twirling an arbitrary unitary channel over the set collapses it onto an
isotropic depolarizing channel whose survival fraction depends only on the
magnitude of the unitary's trace:

    1 - eta = (|Tr U|^2 - 1) / 3

which for an axis-angle rotation of angle ``a`` gives
``eta = 4/3 sin^2(a/2)`` independent of the axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .linalg import I2, PAULIS, UNITARITY_TOL, assert_finite, dag, is_density, is_unitary
from .rotations import RngStream, su2_batch

GROUP_PAULI = "Pauli"
GROUP_CLIFFORD_XYZ = "CliffordXYZ"
GROUP_CLIFFORD_CONJ = "CliffordConj"

# Unitarity demanded of the construction itself (entries are exact).
CONSTRUCTION_TOL = 1e-12


@dataclass(frozen=True)
class TwirlSet:
    """Ordered 12-element unitary 2-design with per-element group labels."""

    elements: np.ndarray  # (12, 2, 2) complex
    group_labels: tuple[str, ...]

    def __post_init__(self):
        elements = np.asarray(self.elements, dtype=complex)
        if elements.shape != (12, 2, 2):
            raise ValueError("a twirl set holds exactly twelve 2x2 matrices")
        if len(self.group_labels) != 12:
            raise ValueError("need one group label per element")
        for k in range(12):
            if not is_unitary(elements[k], CONSTRUCTION_TOL):
                raise ValueError(f"element {k + 1} is not unitary")
        elements.flags.writeable = False
        object.__setattr__(self, "elements", elements)

    def __len__(self) -> int:
        return 12

    def element(self, k: int) -> np.ndarray:
        """1-based element access, matching beacon indices."""
        if not 1 <= k <= 12:
            raise IndexError("element index runs from 1 to 12")
        return self.elements[k - 1]


def build_twirl_set() -> TwirlSet:
    """Construct the twelve elements verbatim, in their canonical order."""
    h = 0.5
    elements = np.array(
        [
            [[1, 0], [0, 1]],
            [[0, 1j], [1j, 0]],
            [[0, -1], [1, 0]],
            [[1j, 0], [0, -1j]],
            [[h - h * 1j, -h - h * 1j], [h - h * 1j, h + h * 1j]],
            [[h + h * 1j, h - h * 1j], [-h - h * 1j, h - h * 1j]],
            [[h + h * 1j, -h + h * 1j], [h + h * 1j, h - h * 1j]],
            [[h - h * 1j, h + h * 1j], [-h + h * 1j, h + h * 1j]],
            [[h + h * 1j, h + h * 1j], [-h + h * 1j, h - h * 1j]],
            [[h - h * 1j, -h + h * 1j], [h + h * 1j, h + h * 1j]],
            [[h - h * 1j, h - h * 1j], [-h - h * 1j, h + h * 1j]],
            [[h + h * 1j, -h - h * 1j], [h - h * 1j, h - h * 1j]],
        ],
        dtype=complex,
    )
    labels = (GROUP_PAULI,) * 4 + (GROUP_CLIFFORD_XYZ,) * 4 + (GROUP_CLIFFORD_CONJ,) * 4
    return TwirlSet(elements, labels)


_DEFAULT_SET: Optional[TwirlSet] = None


def default_twirl_set() -> TwirlSet:
    """Shared immutable instance; safe to read from any number of workers."""
    global _DEFAULT_SET
    if _DEFAULT_SET is None:
        _DEFAULT_SET = build_twirl_set()
    return _DEFAULT_SET


@dataclass(frozen=True)
class DepolarizingParams:
    """Depolarization strength eta in [0, 4/3]; survival fraction is 1 - eta."""

    eta: float

    def __post_init__(self):
        # Range holds by proof for unitary input; assert rather than clamp so a
        # broken construction cannot hide behind a silent projection.
        if not -1e-12 <= self.eta <= 4.0 / 3.0 + 1e-12:
            raise AssertionError(f"eta = {self.eta!r} outside [0, 4/3]")

    @property
    def survival(self) -> float:
        return 1.0 - self.eta


def depolarization_eta(u: np.ndarray) -> DepolarizingParams:
    """eta = 1 - (|Tr u|^2 - 1)/3 for unitary u."""
    u = assert_finite(u, "u")
    if not is_unitary(u, UNITARITY_TOL):
        raise ValueError("u is not unitary")
    return DepolarizingParams(eta=1.0 - (abs(np.trace(u)) ** 2 - 1.0) / 3.0)


def conjugated_elements(u: np.ndarray, twirl_set: Optional[TwirlSet] = None) -> np.ndarray:
    """All twelve effective operators V_k^dag @ u @ V_k, stacked (12, 2, 2)."""
    ts = twirl_set if twirl_set is not None else default_twirl_set()
    v = ts.elements
    return np.einsum("kji,jl,klm->kim", v.conj(), u, v)


def twirl_channel(
    u: np.ndarray, rho: np.ndarray, twirl_set: Optional[TwirlSet] = None
) -> np.ndarray:
    """Average of (V_k^dag u V_k) rho (V_k^dag u V_k)^dag over the set."""
    u = assert_finite(u, "u")
    if not is_unitary(u, UNITARITY_TOL):
        raise ValueError("u is not unitary")
    rho = assert_finite(rho, "rho")
    if not is_density(rho):
        raise ValueError("rho is not a density matrix")
    eff = conjugated_elements(u, twirl_set)
    out = np.einsum("kij,jl,kml->im", eff, rho, eff.conj()) / 12.0
    if not is_density(out, tol=1e-12):
        raise AssertionError("twirl output failed the density-matrix check")
    return out


def frame_potential(elements: Sequence[np.ndarray] | np.ndarray) -> float:
    """(1/N^2) sum_{j,k} |Tr(V_j^dag V_k)|^4; equals 2 for a unitary 2-design."""
    arr = np.asarray(elements, dtype=complex)
    n = arr.shape[0]
    overlaps = np.einsum("jba,kba->jk", arr.conj(), arr)
    return float(np.sum(np.abs(overlaps) ** 4) / n**2)


@dataclass
class TwoDesignReport:
    """Outcome of the operational 2-design certification."""

    passed: bool
    trials: int
    tol: float
    max_deviation: float
    worst_angle: float
    worst_axis: np.ndarray
    worst_bloch: np.ndarray
    cross_term_norm: float
    frame_potential: float
    unitarity_max_dev: float
    duplicate_pairs: list[tuple[int, int]] = field(default_factory=list)

    def summary_lines(self) -> list[str]:
        lines = [
            f"operational twirl test: {self.trials} random (unitary, state) pairs",
            f"  max |twirl(u, rho) - [(1-eta) rho + eta I/2]| = {self.max_deviation:.3e}"
            f" (tol {self.tol:.1e})",
            f"  linear cross-term norm max_j |mean_k V_k^dag sigma_j V_k| = "
            f"{self.cross_term_norm:.3e}",
            f"  frame potential = {self.frame_potential:.12g} (2-design value: 2)",
            f"  element unitarity max deviation = {self.unitarity_max_dev:.3e}",
        ]
        if self.duplicate_pairs:
            dups = ", ".join(f"({a}, {b})" for a, b in self.duplicate_pairs)
            lines.append(f"  projectively duplicate element pairs (1-based): {dups}")
        if not self.passed:
            lines.append(
                f"  worst offender: angle = {self.worst_angle:.6f} rad, "
                f"axis = {np.array2string(self.worst_axis, precision=6)}, "
                f"state Bloch vector = {np.array2string(self.worst_bloch, precision=6)}"
            )
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return lines


def certify_two_design(
    elements: TwirlSet | Sequence[np.ndarray] | np.ndarray,
    trials: int = 100,
    tol: float = 1e-10,
    seed: int = 0,
) -> TwoDesignReport:
    """Operationally certify that twirling over ``elements`` depolarizes.

    For ``trials`` random pairs of an axis-angle unitary (Haar axis, angle
    uniform on [0, pi]) and a random mixed state, the twirled channel output
    is compared entrywise against the closed-form depolarized state.  The
    linear cross terms, which a 2-design must average to zero, are checked
    directly, and the frame potential is reported as a cross-check.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    arr = elements.elements if isinstance(elements, TwirlSet) else np.asarray(elements, complex)
    n = arr.shape[0]

    unit_dev = max(float(np.max(np.abs(a @ dag(a) - I2))) for a in arr)

    duplicates = []
    for j in range(n):
        for k in range(j + 1, n):
            # |Tr(V_j^dag V_k)| = 2 iff the elements agree up to global phase.
            if abs(abs(np.trace(dag(arr[j]) @ arr[k])) - 2.0) < 1e-9:
                duplicates.append((j + 1, k + 1))

    cross = max(
        float(np.max(np.abs(np.mean([dag(v) @ s @ v for v in arr], axis=0))))
        for s in PAULIS
    )

    rng = RngStream(seed, 0).generator()
    axes = rng.standard_normal((trials, 3))
    axes /= np.linalg.norm(axes, axis=1)[:, None]
    angles = rng.uniform(0.0, np.pi, size=trials)
    us = su2_batch(axes, angles)
    bloch_dirs = rng.standard_normal((trials, 3))
    bloch_dirs /= np.linalg.norm(bloch_dirs, axis=1)[:, None]
    bloch = bloch_dirs * rng.uniform(0.0, 1.0, size=trials)[:, None]

    worst = -1.0
    worst_idx = 0
    for t in range(trials):
        u = us[t]
        r = bloch[t]
        rho = 0.5 * (I2 + r[0] * PAULIS[0] + r[1] * PAULIS[1] + r[2] * PAULIS[2])
        eff = np.einsum("kji,jl,klm->kim", arr.conj(), u, arr)
        tw = np.einsum("kij,jl,kml->im", eff, rho, eff.conj()) / n
        eta = 1.0 - (abs(np.trace(u)) ** 2 - 1.0) / 3.0
        ref = (1.0 - eta) * rho + eta * I2 / 2.0
        dev = float(np.max(np.abs(tw - ref)))
        if dev > worst:
            worst, worst_idx = dev, t

    passed = worst <= tol and cross <= tol and unit_dev <= tol and not duplicates
    return TwoDesignReport(
        passed=passed,
        trials=trials,
        tol=tol,
        max_deviation=worst,
        worst_angle=float(angles[worst_idx]),
        worst_axis=axes[worst_idx],
        worst_bloch=bloch[worst_idx],
        cross_term_norm=cross,
        frame_potential=frame_potential(arr),
        unitarity_max_dev=unit_dev,
        duplicate_pairs=duplicates,
    )


