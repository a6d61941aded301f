"""Fiber link budget: attenuation, dark counts, and maximum secure distance.

The channel is a single lumped attenuating span.  Detection events are
either signal clicks (probability mu * 10^(-beta*L/10), carrying the
intrinsic error rate) or dark counts (probability y0, half of which land on
the wrong outcome), so the observed error fraction climbs toward 1/2 once
attenuation lets dark counts dominate.  The maximum secure distance is the
largest span at which that fraction still clears the security threshold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .rotations import NoiseModel, RngStream, sample_rotation_batch, su2_batch
from .states import qber_batch, qber_protected_batch
from .twirl import TwirlSet

_SEARCH_MAX_KM = 1000.0
_SEARCH_RES_KM = 0.01


@dataclass(frozen=True)
class LinkParams:
    """Weak-coherent-pulse link parameters.

    beta: fiber attenuation in dB/km; mu: mean photon number per pulse;
    y0: dark-count probability per detection gate; threshold: QBER security
    limit.
    """

    beta: float = 0.2
    mu: float = 0.5
    y0: float = 1e-6
    threshold: float = 0.11

    def __post_init__(self):
        if self.beta <= 0 or self.mu <= 0 or self.y0 <= 0 or self.threshold <= 0:
            raise ValueError("all link parameters must be strictly positive")
        if self.threshold >= 0.5:
            raise ValueError("threshold must be below 0.5")


@dataclass(frozen=True)
class DistanceCurvePoint:
    sigma: float
    l_max_unprotected: float
    l_max_protected: float

    def __post_init__(self):
        if self.l_max_unprotected < 0 or self.l_max_protected < 0:
            raise ValueError("distances must be >= 0")


def signal_prob(params: LinkParams, l: float) -> float:
    """Signal click probability mu * 10^(-beta*l/10) at span length l km."""
    if l < 0:
        raise ValueError("distance must be >= 0")
    return params.mu * 10.0 ** (-params.beta * l / 10.0)


def total_qber(params: LinkParams, l: float, e_int: float) -> float:
    """Observed error fraction at distance l given intrinsic error e_int.

    (e_int * P_sig + y0/2) / (P_sig + y0): all signal errors come from the
    intrinsic channel rotation, half of all dark counts are erroneous.
    """
    if not 0.0 <= e_int <= 1.0:
        raise ValueError("e_int must be a probability")
    p_sig = signal_prob(params, l)
    return (e_int * p_sig + 0.5 * params.y0) / (p_sig + params.y0)


def max_secure_distance(params: LinkParams, e_int: float) -> float:
    """Largest span with total_qber <= threshold, to 0.01 km by bisection.

    Returns 0 when the intrinsic error alone already consumes the budget.
    """
    if total_qber(params, 0.0, e_int) > params.threshold:
        return 0.0
    if total_qber(params, _SEARCH_MAX_KM, e_int) <= params.threshold:
        return _SEARCH_MAX_KM
    lo, hi = 0.0, _SEARCH_MAX_KM
    while hi - lo > _SEARCH_RES_KM:
        mid = 0.5 * (lo + hi)
        if total_qber(params, mid, e_int) <= params.threshold:
            lo = mid
        else:
            hi = mid
    return lo


def intrinsic_error(
    model: NoiseModel,
    protected: bool,
    samples: int,
    seed: int = 0,
    twirl_set: Optional[TwirlSet] = None,
) -> float:
    """Monte Carlo mean of the exact per-rotation error rate under ``model``."""
    if samples < 1000:
        raise ValueError("need at least 1000 samples for a stable estimate")
    gen = RngStream(seed, 0).generator()
    angles, axes = sample_rotation_batch(model, gen, samples)
    us = su2_batch(axes, angles)
    rates = qber_protected_batch(us, twirl_set) if protected else qber_batch(us)
    return float(np.mean(rates))
