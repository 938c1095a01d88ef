"""The lambda/N interference fringe and its single-trial statistics.

A selected N-photon event is registered with probability

    p(phi) = (eta / 2) * (1 + V * sin(N * (bias + phi)))

so ``eta / 2`` is the mean level of the fringe and ``eta * V`` its
peak-to-peak amplitude.  Every function here accepts a scalar phase or a
numpy array of phases and returns the same shape back.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError

__all__ = [
    "FringeParams",
    "detection_probability",
    "probability_slope",
    "trial_variance",
]


@dataclass(frozen=True)
class FringeParams:
    n_photons: int
    efficiency: float
    visibility: float
    bias: float = 0.0

    def __post_init__(self):
        if isinstance(self.n_photons, bool) or int(self.n_photons) != self.n_photons:
            raise ValidationError(f"n_photons must be an integer, got {self.n_photons!r}")
        if self.n_photons < 1:
            raise ValidationError(f"n_photons must be >= 1, got {self.n_photons}")
        object.__setattr__(self, "n_photons", int(self.n_photons))
        for name in ("efficiency", "visibility"):
            value = float(getattr(self, name))
            if not 0.0 <= value <= 1.0:
                raise ValidationError(f"{name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, value)
        bias = float(self.bias)
        if not math.isfinite(bias):
            raise ValidationError(f"bias must be finite, got {bias}")
        object.__setattr__(self, "bias", bias)

    def with_bias(self, bias: float) -> "FringeParams":
        return replace(self, bias=bias)

    @property
    def period(self) -> float:
        """Fringe period ``2 pi / N`` in the applied phase."""
        return 2.0 * math.pi / self.n_photons


def _phase_array(phase):
    arr = np.asarray(phase, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("phase must be finite")
    return arr


def _unwrap(arr: np.ndarray):
    return float(arr) if arr.ndim == 0 else arr


def _scalar(phase) -> bool:
    return isinstance(phase, (float, int)) and not isinstance(phase, bool)


def _check_scalar(phase: float) -> float:
    if not math.isfinite(phase):
        raise ValidationError("phase must be finite")
    return float(phase)


def detection_probability(params: FringeParams, phase=0.0):
    """Probability of the selected N-photon event in one trial."""
    n = params.n_photons
    if _scalar(phase):
        arg = n * (params.bias + _check_scalar(phase))
        return 0.5 * params.efficiency * (1.0 + params.visibility * math.sin(arg))
    phi = _phase_array(phase)
    p = 0.5 * params.efficiency * (1.0 + params.visibility * np.sin(n * (params.bias + phi)))
    return _unwrap(p)


def probability_slope(params: FringeParams, phase=0.0):
    """Analytic derivative ``dp/dphi``."""
    n = params.n_photons
    if _scalar(phase):
        arg = n * (params.bias + _check_scalar(phase))
        return 0.5 * params.efficiency * params.visibility * n * math.cos(arg)
    phi = _phase_array(phase)
    slope = 0.5 * params.efficiency * params.visibility * n * np.cos(n * (params.bias + phi))
    return _unwrap(slope)


def trial_variance(params: FringeParams, phase=0.0, trials: int = 1):
    """Binomial variance ``k p (1 - p)`` of the event count after ``trials`` trials."""
    if isinstance(trials, bool) or int(trials) != trials or trials < 1:
        raise ValidationError(f"trials must be a positive integer, got {trials!r}")
    p = np.asarray(detection_probability(params, phase))
    return _unwrap(trials * p * (1.0 - p))
