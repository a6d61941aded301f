"""Correlated-twirling polarization stabilization for MDI-QKD.

A deterministic simulation and analysis toolkit: exact density-matrix
evolution of the two-photon state at the untrusted node, a 12-element
unitary 2-design whose synchronized application turns arbitrary relative
polarization drift into an isotropic depolarizing channel, the classical
sifting protocol that makes the scrambling reversible, closed-form and
numeric guessing-probability bounds, and a fiber link budget translating
intrinsic error rates into maximum secure distances.
"""

from .fiber import DistanceCurvePoint, LinkParams, intrinsic_error, max_secure_distance, signal_prob, total_qber
from .linalg import (
    EIG_TOL,
    HERMITICITY_TOL,
    UNITARITY_TOL,
    hermitian_eigenvalues,
    is_density,
    is_unitary,
    tensor,
    trace_distance,
)
from .rotations import (
    FixedAxisBias,
    FixedAxisSweep,
    HaarAxis,
    NoiseModel,
    RngStream,
    RotationSpec,
    TwoArmGaussian,
    derive_seed,
    relative_rotation,
    sample_rotation,
    su2_from_axis_angle,
)
from .sifting import (
    LookupTable,
    PulseRecord,
    SessionResult,
    build_lookup_table,
    lookup_table_via_transpose_identity,
    run_session,
    sample_bell_outcome,
)
from .states import (
    BAD_AXIS,
    GOOD_AXIS,
    Basis,
    BellProjectors,
    BellState,
    GuessReport,
    bell_projectors,
    guess_report_analytic,
    guess_report_numeric,
    prepare_state,
    protected_p_guess_envelope,
    qber_exact,
    qber_protected_exact,
)
from .sweeps import SweepResult, sweep_alpha, sweep_bias, sweep_distance, sweep_pguess, threshold_crossing
from .twirl import (
    DepolarizingParams,
    TwirlSet,
    TwoDesignReport,
    build_twirl_set,
    certify_two_design,
    default_twirl_set,
    depolarization_eta,
    frame_potential,
    twirl_channel,
)

__version__ = "0.1.0"

__all__ = [
    "BAD_AXIS",
    "Basis",
    "BellProjectors",
    "BellState",
    "DepolarizingParams",
    "DistanceCurvePoint",
    "EIG_TOL",
    "FixedAxisBias",
    "FixedAxisSweep",
    "GOOD_AXIS",
    "GuessReport",
    "HERMITICITY_TOL",
    "HaarAxis",
    "LinkParams",
    "LookupTable",
    "NoiseModel",
    "PulseRecord",
    "RngStream",
    "RotationSpec",
    "SessionResult",
    "SweepResult",
    "TwirlSet",
    "TwoArmGaussian",
    "TwoDesignReport",
    "UNITARITY_TOL",
    "bell_projectors",
    "build_lookup_table",
    "build_twirl_set",
    "certify_two_design",
    "default_twirl_set",
    "depolarization_eta",
    "derive_seed",
    "frame_potential",
    "guess_report_analytic",
    "guess_report_numeric",
    "hermitian_eigenvalues",
    "intrinsic_error",
    "is_density",
    "is_unitary",
    "lookup_table_via_transpose_identity",
    "max_secure_distance",
    "prepare_state",
    "protected_p_guess_envelope",
    "qber_exact",
    "qber_protected_exact",
    "relative_rotation",
    "run_session",
    "sample_bell_outcome",
    "sample_rotation",
    "signal_prob",
    "su2_from_axis_angle",
    "sweep_alpha",
    "sweep_bias",
    "sweep_distance",
    "sweep_pguess",
    "tensor",
    "threshold_crossing",
    "total_qber",
    "trace_distance",
    "twirl_channel",
]
