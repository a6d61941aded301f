"""Event-level simulation of the beacon-synchronized sifting protocol.

Per pulse: both parties draw a basis and a bit, scramble their prepared
states with the beacon-selected twirl element, Bob's photon additionally
picks up the relative channel rotation, and the central node announces one
of the four Bell outcomes with Born-rule weights.  Classical post-processing
then reverses the scrambling through a look-up table, sifts on basis
agreement, and maps the announced outcome to a parity correction:

* Z basis: Psi announcements mean anti-correlated bits, so Bob flips.
* X basis: minus announcements mean anti-correlated bits, so Bob flips.

The look-up table is computed by brute force, applying the joint inverse
scrambling to each Bell vector and matching the image back onto the Bell
basis by overlap modulus; the scrambling provably maps the Bell basis onto
itself, and a failed match aborts construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .linalg import is_density, real_trace_overlap, tensor
from .rotations import NoiseModel, RngStream, RotationSpec, sample_rotation_batch, su2_batch
from .states import BELL_VECTORS, Basis, BellState, PREP_KETS, bell_projectors
from .twirl import TwirlSet, default_twirl_set

_MATCH_TOL = 1e-9


class LookupConstructionError(RuntimeError):
    """The joint inverse scrambling failed to land on a Bell basis vector."""


@dataclass(frozen=True)
class LookupTable:
    """Reversal map (beacon k, announced Bell state) -> effective Bell state."""

    table: np.ndarray  # (12, 4) int8 of BellState values

    def __post_init__(self):
        table = np.asarray(self.table, dtype=np.int8)
        if table.shape != (12, 4):
            raise ValueError("lookup table must be 12 x 4")
        for k in range(12):
            if sorted(table[k]) != [0, 1, 2, 3]:
                raise ValueError(f"row {k + 1} is not a bijection on the Bell basis")
        table.flags.writeable = False
        object.__setattr__(self, "table", table)

    def effective(self, k: int, announced: BellState) -> BellState:
        """1-based beacon index, matching the public element numbering."""
        if not 1 <= k <= 12:
            raise IndexError("beacon index runs from 1 to 12")
        return BellState(int(self.table[k - 1, announced]))

    def rows(self) -> list[list[BellState]]:
        return [[BellState(int(x)) for x in row] for row in self.table]


def build_lookup_table(twirl_set: Optional[TwirlSet] = None) -> LookupTable:
    """Brute-force the reversal map from the twirl elements themselves."""
    ts = twirl_set if twirl_set is not None else default_twirl_set()
    table = np.zeros((12, 4), dtype=np.int8)
    for k in range(12):
        w = tensor(ts.elements[k].conj().T, ts.elements[k].conj().T)
        for s in BellState:
            image = w @ BELL_VECTORS[s]
            overlaps = np.abs(BELL_VECTORS.conj() @ image)
            hits = np.nonzero(overlaps > 1.0 - _MATCH_TOL)[0]
            if len(hits) != 1:
                raise LookupConstructionError(
                    f"element {k + 1}: image of {BellState(s).label} does not match a "
                    f"single Bell state (overlap moduli {np.round(overlaps, 6)})"
                )
            table[k, s] = hits[0]
    return LookupTable(table)


def lookup_table_via_transpose_identity(twirl_set: Optional[TwirlSet] = None) -> LookupTable:
    """Independent reconstruction of the reversal map, used for cross-checks.

    Writing each Bell vector as (sigma kron I)|Phi+> for a Pauli label
    sigma in {I, X, Y, Z}, the joint action obeys
    (A kron A)(sigma kron I)|Phi+> = (A sigma A^T kron I)|Phi+>, so the
    reversal permutation can be read off from which Pauli A sigma A^T is
    proportional to, without ever building a 4x4 operator.  A direct
    corollary: A sigma_y A^T = det(A) sigma_y for every A, so the singlet is
    a fixed point of every row.
    """
    from .linalg import I2, PAULIS

    ts = twirl_set if twirl_set is not None else default_twirl_set()
    # Pauli label of each Bell state under |psi_sigma> = (sigma kron I)|Phi+>.
    labels = [I2, PAULIS[2], PAULIS[0], PAULIS[1]]  # Phi+, Phi-, Psi+, Psi-
    table = np.zeros((12, 4), dtype=np.int8)
    for k in range(12):
        a = ts.elements[k].conj().T
        for s in BellState:
            image = a @ labels[s] @ a.T
            hits = [
                j
                for j, lab in enumerate(labels)
                if abs(abs(np.trace(lab.conj().T @ image)) - 2.0) < 1e-9
            ]
            if len(hits) != 1:
                raise LookupConstructionError(
                    f"element {k + 1}: transposed conjugation of {BellState(s).label} "
                    "is not proportional to a single Pauli label"
                )
            table[k, s] = hits[0]
    return LookupTable(table)


# External reference tabulation retained for audit comparison only.  Its last
# two row patterns are internally inconsistent with the reversal operation
# they claim to tabulate: they move the singlet off itself, which the joint
# same-element scrambling provably cannot do (see
# lookup_table_via_transpose_identity).  The computed table is authoritative.
AUDIT_REFERENCE_ROWS = (
    (BellState.PHI_PLUS, BellState.PHI_MINUS, BellState.PSI_PLUS, BellState.PSI_MINUS),
    (BellState.PHI_PLUS, BellState.PSI_PLUS, BellState.PHI_MINUS, BellState.PSI_MINUS),
    (BellState.PHI_MINUS, BellState.PHI_PLUS, BellState.PSI_MINUS, BellState.PSI_PLUS),
)


def audit_reference_table() -> np.ndarray:
    """The audit reference expanded to per-element (12, 4) form."""
    rows = []
    for k in range(12):
        rows.append([int(s) for s in AUDIT_REFERENCE_ROWS[k // 4]])
    return np.array(rows, dtype=np.int8)


def sample_bell_outcome(rho_joint: np.ndarray, rng: RngStream | np.random.Generator) -> BellState:
    """Draw one announcement with probability Tr(rho_joint P_outcome)."""
    rho_joint = np.asarray(rho_joint, dtype=complex)
    if not is_density(rho_joint):
        raise ValueError("rho_joint is not a density matrix")
    projs = bell_projectors()
    probs = np.array([real_trace_overlap(rho_joint, projs.of(s)) for s in BellState])
    if np.min(probs) < -1e-10:
        raise ArithmeticError(f"negative outcome probability {np.min(probs):.3e}")
    if abs(probs.sum() - 1.0) > 1e-10:
        raise ArithmeticError(f"outcome probabilities sum to {probs.sum()!r}")
    probs = np.clip(probs, 0.0, None)
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    r = gen.random() * probs.sum()
    return BellState(int(np.searchsorted(np.cumsum(probs), r, side="right").clip(0, 3)))


@dataclass(frozen=True)
class PulseRecord:
    """One transmission window of the event log."""

    index: int
    beacon_k: int  # 1..12; fixed at 1 (identity) in unprotected runs
    basis_a: Basis
    bit_a: int
    basis_b: Basis
    bit_b: int
    rotation: RotationSpec
    announced: BellState
    effective: BellState
    sifted: bool
    error: bool


@dataclass(frozen=True)
class SessionResult:
    """Aggregated sifted-key statistics of one protocol session."""

    pulses: int
    sifted_z_pairs: int
    sifted_x_pairs: int
    z_errors: int
    x_errors: int
    discarded: int
    qber_z: float
    qber_x: float
    qber_z_defined: bool
    qber_x_defined: bool
    events: Optional[list[PulseRecord]] = field(default=None, repr=False)

    @property
    def qber_z_stderr(self) -> float:
        if not self.qber_z_defined:
            return 0.0
        return float(np.sqrt(self.qber_z * (1.0 - self.qber_z) / self.sifted_z_pairs))

    @property
    def qber_x_stderr(self) -> float:
        if not self.qber_x_defined:
            return 0.0
        return float(np.sqrt(self.qber_x * (1.0 - self.qber_x) / self.sifted_x_pairs))


_BLOCK = 65536


def run_session(
    pulses: int,
    model: NoiseModel,
    protected: bool = False,
    seed: int = 0,
    twirl_set: Optional[TwirlSet] = None,
    record_events: bool = False,
) -> SessionResult:
    """Simulate a full session of ``pulses`` transmission windows.

    Pulses are processed in blocks, each fed by its own counter-based stream
    keyed ``(seed, block_index)``; tallies merge associatively, so results do
    not depend on block evaluation order.  Unprotected runs are the special
    case of a beacon pinned to element 1 (the identity), which makes the
    look-up reversal the identity map.
    """
    if pulses < 1:
        raise ValueError("pulses must be >= 1")
    ts = twirl_set if twirl_set is not None else default_twirl_set()
    lookup = build_lookup_table(ts)
    v = ts.elements

    sifted = np.zeros(2, dtype=np.int64)  # [Z, X]
    errors = np.zeros(2, dtype=np.int64)
    discarded = 0
    events: Optional[list[PulseRecord]] = [] if record_events else None

    for block, start in enumerate(range(0, pulses, _BLOCK)):
        n = min(_BLOCK, pulses - start)
        gen = RngStream(seed, block).generator()
        basis_a = gen.integers(0, 2, size=n)
        basis_b = gen.integers(0, 2, size=n)
        bit_a = gen.integers(0, 2, size=n)
        bit_b = gen.integers(0, 2, size=n)
        beacon = gen.integers(0, 12, size=n) if protected else np.zeros(n, dtype=np.int64)
        angles, axes = sample_rotation_batch(model, gen, n)
        u_rel = su2_batch(axes, angles)

        vk = v[beacon]
        psi_a = np.einsum("nij,nj->ni", vk, PREP_KETS[basis_a, bit_a])
        chan_b = np.einsum("nij,njk->nik", u_rel, vk)
        psi_b = np.einsum("nij,nj->ni", chan_b, PREP_KETS[basis_b, bit_b])
        joint = np.einsum("ni,nj->nij", psi_a, psi_b).reshape(n, 4)

        probs = np.abs(joint @ BELL_VECTORS.conj().T) ** 2
        cum = np.cumsum(probs, axis=1)
        r = gen.random(n) * cum[:, -1]
        announced = np.minimum((cum < r[:, None]).sum(axis=1), 3)
        effective = lookup.table[beacon, announced]

        match = basis_a == basis_b
        flip = np.where(basis_a == 0, effective >= 2, effective % 2 == 1)
        err = match & (bit_a != (bit_b ^ flip))

        np.add.at(sifted, basis_a[match], 1)
        np.add.at(errors, basis_a[err], 1)
        discarded += int(n - match.sum())

        if events is not None:
            for i in range(n):
                events.append(
                    PulseRecord(
                        index=start + i,
                        beacon_k=int(beacon[i]) + 1,
                        basis_a=Basis.Z if basis_a[i] == 0 else Basis.X,
                        bit_a=int(bit_a[i]),
                        basis_b=Basis.Z if basis_b[i] == 0 else Basis.X,
                        bit_b=int(bit_b[i]),
                        rotation=RotationSpec(axes[i], float(angles[i])),
                        announced=BellState(int(announced[i])),
                        effective=BellState(int(effective[i])),
                        sifted=bool(match[i]),
                        error=bool(err[i]),
                    )
                )

    z_pairs, x_pairs = int(sifted[0]), int(sifted[1])
    z_err, x_err = int(errors[0]), int(errors[1])
    return SessionResult(
        pulses=pulses,
        sifted_z_pairs=z_pairs,
        sifted_x_pairs=x_pairs,
        z_errors=z_err,
        x_errors=x_err,
        discarded=discarded,
        qber_z=z_err / z_pairs if z_pairs else 0.0,
        qber_x=x_err / x_pairs if x_pairs else 0.0,
        qber_z_defined=z_pairs > 0,
        qber_x_defined=x_pairs > 0,
        events=events,
    )
