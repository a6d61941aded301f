"""SU(2) channel rotations and the stochastic turbulence regimes.

A relative polarization drift is an axis-angle rotation
``U = cos(a/2) I - i sin(a/2) (n . sigma)`` with unit axis ``n`` and angle
``a`` folded into [0, pi].  Four noise regimes produce per-pulse rotations:

* ``FixedAxisSweep``  -- deterministic rotation, used for angle sweeps.
* ``FixedAxisBias``   -- mean drift about Y or Z plus isotropic Gaussian
  jitter on all three rotation-vector components.
* ``HaarAxis``        -- fixed angle, axis uniform on the sphere.
* ``TwoArmGaussian``  -- two arms drift independently about the worst-case
  Y axis with std ``sigma``; the relative angle is their difference.

Randomness is counter-based: a :class:`RngStream` is keyed by
``(seed, stream_id)`` so that stream ``i`` yields the same draws no matter
which other streams were consumed first, on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .linalg import assert_finite

AXIS_X = np.array([1.0, 0.0, 0.0])
AXIS_Y = np.array([0.0, 1.0, 0.0])
AXIS_Z = np.array([0.0, 0.0, 1.0])

_AXIS_NORM_TOL = 1e-12
_ZERO_ANGLE_TOL = 1e-12


@dataclass(frozen=True)
class RngStream:
    """Deterministic, splittable random stream keyed by (seed, stream_id)."""

    seed: int
    stream_id: int = 0

    def generator(self) -> np.random.Generator:
        key = np.array([self.seed % 2**64, self.stream_id % 2**64], dtype=np.uint64)
        return np.random.Generator(np.random.Philox(key=key))


def derive_seed(seed: int, *ids: int) -> int:
    """Mix (seed, ids...) into a fresh 64-bit seed for a child component."""
    ss = np.random.SeedSequence(entropy=(seed % 2**64,) + tuple(i % 2**64 for i in ids))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class RotationSpec:
    """Axis-angle rotation: unit 3-vector axis, angle in radians within [0, pi]."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        axis = np.asarray(self.axis, dtype=float)
        if axis.shape != (3,):
            raise ValueError("axis must be a 3-vector")
        if not np.all(np.isfinite(axis)) or not np.isfinite(self.angle):
            raise ValueError("rotation components must be finite")
        if abs(np.linalg.norm(axis) - 1.0) > _AXIS_NORM_TOL:
            raise ValueError(f"axis norm {np.linalg.norm(axis)!r} is not 1")
        if self.angle < 0:
            raise ValueError("angle must be non-negative")
        axis.flags.writeable = False
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True)
class FixedAxisBias:
    """Mean rotation of ``bias`` radians about Y or Z, with Gaussian jitter of
    std ``jitter_sigma`` added independently to all three rotation-vector
    components on every pulse."""

    axis: str  # "y" or "z"
    bias: float
    jitter_sigma: float = 0.02

    def __post_init__(self):
        if self.axis not in ("y", "z"):
            raise ValueError("FixedAxisBias axis must be 'y' or 'z'")
        if self.bias < 0 or self.jitter_sigma < 0:
            raise ValueError("bias and jitter_sigma must be >= 0")


@dataclass(frozen=True)
class FixedAxisSweep:
    """Deterministic rotation by ``angle`` about ``axis``."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        spec = RotationSpec(np.asarray(self.axis, dtype=float), abs(float(self.angle)))
        object.__setattr__(self, "axis", spec.axis)
        object.__setattr__(self, "angle", float(self.angle))


@dataclass(frozen=True)
class HaarAxis:
    """Fixed rotation angle about an axis drawn uniformly on the sphere."""

    angle: float

    def __post_init__(self):
        if self.angle < 0:
            raise ValueError("angle must be >= 0")


@dataclass(frozen=True)
class TwoArmGaussian:
    """Each arm drifts about the worst-case Y axis by an independent
    N(0, sigma^2) angle; the relative rotation angle is |g_B - g_A|."""

    sigma: float

    def __post_init__(self):
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")


NoiseModel = Union[FixedAxisBias, FixedAxisSweep, HaarAxis, TwoArmGaussian]


def su2_from_axis_angle(spec: RotationSpec) -> np.ndarray:
    """Matrix [[a, b], [-conj(b), conj(a)]] with a = cos(angle/2) - i n_z sin(angle/2)
    and b = (-n_y - i n_x) sin(angle/2)."""
    u = su2_batch(spec.axis[np.newaxis, :], np.array([spec.angle]))[0]
    return u


def su2_batch(axes: np.ndarray, angles: np.ndarray) -> np.ndarray:
    """Vectorized axis-angle construction; axes (N, 3), angles (N,) -> (N, 2, 2)."""
    axes = np.asarray(axes, dtype=float)
    angles = np.asarray(angles, dtype=float)
    norms = np.linalg.norm(axes, axis=1)
    if np.max(np.abs(norms - 1.0)) > _AXIS_NORM_TOL:
        raise ValueError("all axes must be unit vectors")
    c = np.cos(angles / 2)
    s = np.sin(angles / 2)
    a = c - 1j * axes[:, 2] * s
    b = (-axes[:, 1] - 1j * axes[:, 0]) * s
    u = np.empty((len(angles), 2, 2), dtype=complex)
    u[:, 0, 0] = a
    u[:, 0, 1] = b
    u[:, 1, 0] = -b.conjugate()
    u[:, 1, 1] = a.conjugate()
    return u


def _canonicalize(angles: np.ndarray, axes: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Fold angles into [0, pi] using the (angle, n) ~ (-angle, -n) equivalence."""
    angles = np.mod(angles, 2 * np.pi)
    over = angles > np.pi
    angles = np.where(over, 2 * np.pi - angles, angles)
    axes = np.where(over[:, None], -axes, axes)
    return angles, axes


def sample_rotation_batch(
    model: NoiseModel, rng: np.random.Generator, n: int
) -> tuple[np.ndarray, np.ndarray]:
    """Draw ``n`` per-pulse rotations; returns (angles (n,), axes (n, 3))."""
    if isinstance(model, FixedAxisSweep):
        angles = np.full(n, float(model.angle))
        axes = np.broadcast_to(model.axis, (n, 3)).copy()
    elif isinstance(model, FixedAxisBias):
        base = AXIS_Y if model.axis == "y" else AXIS_Z
        v = model.bias * base + model.jitter_sigma * rng.standard_normal((n, 3))
        angles = np.linalg.norm(v, axis=1)
        axes = np.where(
            angles[:, None] < _ZERO_ANGLE_TOL, AXIS_Z, v / np.maximum(angles, _ZERO_ANGLE_TOL)[:, None]
        )
    elif isinstance(model, HaarAxis):
        v = rng.standard_normal((n, 3))
        axes = v / np.linalg.norm(v, axis=1)[:, None]
        angles = np.full(n, float(model.angle))
    elif isinstance(model, TwoArmGaussian):
        g = rng.normal(scale=model.sigma, size=(n, 2)) if model.sigma > 0 else np.zeros((n, 2))
        angles = np.abs(g[:, 1] - g[:, 0])
        axes = np.broadcast_to(AXIS_Y, (n, 3)).copy()
    else:
        raise TypeError(f"unknown noise model {type(model).__name__}")
    return _canonicalize(angles, axes)


def sample_rotation(model: NoiseModel, rng: RngStream) -> RotationSpec:
    """Draw a single per-pulse rotation from the given stream."""
    angles, axes = sample_rotation_batch(model, rng.generator(), 1)
    return RotationSpec(axes[0], float(angles[0]))


def relative_rotation(u_a: np.ndarray, u_b: np.ndarray) -> np.ndarray:
    """Relative noise operator u_a^dag @ u_b between the two arms."""
    from .linalg import UNITARITY_TOL, dag, is_unitary

    u_a = assert_finite(u_a, "u_a")
    u_b = assert_finite(u_b, "u_b")
    for name, u in (("u_a", u_a), ("u_b", u_b)):
        if not is_unitary(u, UNITARITY_TOL):
            raise ValueError(f"{name} is not unitary")
    return dag(u_a) @ u_b
