"""Phase error, sensitivity relative to the SQL, and the optimal bias.

Sensitivity is normalised so that ``S = 1`` is the standard quantum limit
and ``S = sqrt(N)`` the Heisenberg limit.  Closed forms for the optimum are
evaluated in a rationalised form, ``A - sqrt(B) = V^2 (1 - eta)^2 /
(A + sqrt(B))`` with ``A = 1 - (eta/2)(1 + V^2)`` and
``B = (1 - V^2)((1 - eta/2)^2 - (eta V / 2)^2)``, which removes the 0/0 at
``eta = 1`` and the cancellation just below it.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError, ValidationError
from .fringe import FringeParams, detection_probability, probability_slope
from .table import Table

__all__ = [
    "NO_INFORMATION",
    "SensitivityReport",
    "Axis",
    "SweepSpec",
    "phase_error_squared",
    "phase_error_excess_form",
    "sensitivity",
    "optimal_bias",
    "max_sensitivity",
    "sql_thresholds",
    "analyze",
    "sensitivity_sweep",
]

# parameters this close to 1 take the exact boundary branch
BOUNDARY_TOL = 1e-12
# |cos(N bias)| below this counts as a vanishing fringe slope
ZERO_SLOPE_TOL = 1e-12
MAX_GRID_POINTS = 10**7


class _Sentinel(enum.Enum):
    NO_INFORMATION = "no-information"


NO_INFORMATION = _Sentinel.NO_INFORMATION


def _is_one(x) -> np.ndarray:
    return np.abs(np.asarray(x, dtype=float) - 1.0) <= BOUNDARY_TOL


def _require_events(params: FringeParams) -> None:
    if params.efficiency == 0.0:
        raise DomainError("efficiency must be > 0: no events are ever detected at eta = 0")


def _require_trials(trials) -> int:
    if isinstance(trials, bool) or int(trials) != trials or trials < 1:
        raise ValidationError(f"trials must be a positive integer, got {trials!r}")
    return int(trials)


def _sensitivity_sq(n, eta, vis, sine, cos_sq):
    """Vectorised S^2 as a function of sin(N bias) and cos^2(N bias)."""
    eta, vis, sine, cos_sq = np.broadcast_arrays(
        *(np.asarray(x, dtype=float) for x in (eta, vis, sine, cos_sq))
    )
    half = 0.5 * eta
    unit_vis = _is_one(vis)
    with np.errstate(divide="ignore", invalid="ignore"):
        mean = 1.0 + vis * sine
        general = n * half * vis**2 * cos_sq / (mean * (1.0 - half * mean))
        # V = 1: cos^2 / (1 + sin) = 1 - sin, finite at the dark fringe
        unit = n * half * (1.0 - sine) / (1.0 - half * (1.0 + sine))
    out = np.where(unit_vis, unit, general)
    # eta = V = 1: S^2 = N at every bias
    out = np.where(unit_vis & _is_one(eta), float(n), out)
    return out


def _max_sensitivity_sq(n, eta, vis):
    eta, vis = np.broadcast_arrays(np.asarray(eta, dtype=float), np.asarray(vis, dtype=float))
    half = 0.5 * eta
    a = 1.0 - half * (1.0 + vis**2)
    root_b = np.sqrt(np.maximum((1.0 - vis**2) * ((1.0 - half) ** 2 - (half * vis) ** 2), 0.0))
    with np.errstate(divide="ignore", invalid="ignore"):
        out = n * eta * vis**2 / (eta * vis**2 + a + root_b)
    out = np.where(vis == 0.0, 0.0, out)
    out = np.where(_is_one(vis), n * eta, out)
    out = np.where(_is_one(eta), n * vis**2, out)
    return out


def phase_error_squared(params: FringeParams, trials: int = 1) -> float:
    """Squared phase error ``k p (1-p) / (k dp/dphi)^2`` at the bias point.

    At a dark (or saturated) fringe extremum with ``V = 1`` both variance and
    slope vanish; the finite limit ``1 / (k N S^2)`` is returned there.  If
    only the slope vanishes the error is unbounded and ``math.inf`` is
    returned.
    """
    k = _require_trials(trials)
    _require_events(params)
    n = params.n_photons
    arg = n * params.bias
    if params.visibility == 0.0 or abs(math.cos(arg)) <= ZERO_SLOPE_TOL:
        sine = math.sin(arg)
        zero_variance = bool(_is_one(params.visibility)) and (
            sine < 0.0 or bool(_is_one(params.efficiency))
        )
        if not zero_variance:
            return math.inf
        s_sq = float(_sensitivity_sq(n, params.efficiency, params.visibility, sine, math.cos(arg) ** 2))
        return 1.0 / (k * n * s_sq)
    p = detection_probability(params, 0.0)
    slope = probability_slope(params, 0.0)
    denom = (k * slope) ** 2
    if denom == 0.0:  # slope underflow at vanishing visibility
        return math.inf
    return k * p * (1.0 - p) / denom


def phase_error_excess_form(params: FringeParams, trials: int = 1) -> float:
    """Phase error written as the Heisenberg limit ``1/(k N^2)`` times
    ``1 + excess``.  Agrees with :func:`phase_error_squared` wherever both
    are defined."""
    k = _require_trials(trials)
    _require_events(params)
    n, eta, vis = params.n_photons, params.efficiency, params.visibility
    if vis == 0.0:
        raise DomainError("visibility must be > 0 for the excess-noise form")
    arg = n * params.bias
    if abs(math.cos(arg)) <= ZERO_SLOPE_TOL:
        raise DomainError("excess-noise form is singular where |sin(N bias)| = 1")
    sine = math.sin(arg)
    # 1 - sin^2 taken as cos^2 to avoid cancellation near the extrema
    excess = (2.0 - eta * (1.0 + vis**2) + 2.0 * (1.0 - eta) * vis * sine) / (
        eta * vis**2 * math.cos(arg) ** 2
    )
    return (1.0 + excess) / (k * n**2)


def sensitivity(params: FringeParams) -> float:
    """Phase sensitivity S at the bias, relative to the SQL."""
    _require_events(params)
    arg = params.n_photons * params.bias
    s_sq = _sensitivity_sq(
        params.n_photons, params.efficiency, params.visibility, math.sin(arg), math.cos(arg) ** 2
    )
    return math.sqrt(max(float(s_sq), 0.0))


def optimal_bias(params: FringeParams) -> tuple[float, float]:
    """Return ``(sin(N phi_opt), phi_opt)`` maximising the sensitivity.

    ``phi_opt`` is the representative with ``cos(N phi_opt) >= 0``; every
    image under ``phi -> phi + 2 pi / N`` and the mirror branch
    ``N phi -> pi - N phi`` is equally optimal.
    """
    _require_events(params)
    eta, vis = params.efficiency, params.visibility
    if vis == 0.0:
        raise DomainError("visibility must be > 0: sensitivity vanishes identically at V = 0")
    if _is_one(eta):
        sine = 0.0
    elif _is_one(vis):
        sine = -1.0
    else:
        half = 0.5 * eta
        a = 1.0 - half * (1.0 + vis**2)
        root_b = math.sqrt((1.0 - vis**2) * ((1.0 - half) ** 2 - (half * vis) ** 2))
        sine = min(1.0, max(-1.0, -vis * (1.0 - eta) / (a + root_b)))
    return sine, math.asin(sine) / params.n_photons


def max_sensitivity(params: FringeParams) -> float:
    """Sensitivity at the optimal bias; the bias field of ``params`` is ignored."""
    _require_events(params)
    s_sq = _max_sensitivity_sq(params.n_photons, params.efficiency, params.visibility)
    return math.sqrt(float(s_sq))


def sql_thresholds(n_photons: int) -> tuple[float, float]:
    """Visibility threshold at eta = 1 and efficiency threshold at V = 1
    below which the SQL cannot be beaten."""
    if isinstance(n_photons, bool) or int(n_photons) != n_photons or n_photons < 1:
        raise ValidationError(f"n_photons must be a positive integer, got {n_photons!r}")
    return 1.0 / math.sqrt(n_photons), 1.0 / n_photons


@dataclass(frozen=True)
class SensitivityReport:
    params: FringeParams
    sensitivity_at_bias: float
    # None when V = 0: there is no optimum to report
    optimal_bias_sine: Optional[float]
    optimal_bias: Optional[float]
    max_sensitivity: float
    beats_sql: bool
    heisenberg_ratio: float
    # single-trial squared phase error at the bias, or NO_INFORMATION
    phase_error_per_trial: object


def analyze(params: FringeParams) -> SensitivityReport:
    s_max = max_sensitivity(params)
    if params.visibility == 0.0:
        sine = bias = None
    else:
        sine, bias = optimal_bias(params)
    err = phase_error_squared(params, 1)
    return SensitivityReport(
        params=params,
        sensitivity_at_bias=sensitivity(params),
        optimal_bias_sine=sine,
        optimal_bias=bias,
        max_sensitivity=s_max,
        beats_sql=s_max > 1.0,
        heisenberg_ratio=s_max / math.sqrt(params.n_photons),
        phase_error_per_trial=NO_INFORMATION if math.isinf(err) else err,
    )


_AXIS_NAMES = {"bias": "bias", "visibility": "V", "efficiency": "eta"}


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    step: float

    def __post_init__(self):
        if self.name not in _AXIS_NAMES:
            raise ValidationError(f"unknown axis {self.name!r}; expected one of {sorted(_AXIS_NAMES)}")
        if not all(math.isfinite(x) for x in (self.start, self.stop, self.step)):
            raise ValidationError("axis bounds and step must be finite")
        if self.step <= 0:
            raise ValidationError(f"step must be > 0, got {self.step}")
        if self.stop < self.start:
            raise ValidationError(f"axis {self.name}: stop {self.stop} < start {self.start}")
        if (self.stop - self.start) / self.step > MAX_GRID_POINTS:
            raise ValidationError(f"axis {self.name}: more than {MAX_GRID_POINTS} grid points")

    def values(self) -> np.ndarray:
        count = int(math.floor((self.stop - self.start) / self.step + 1e-9)) + 1
        # clamp rounding overshoot so 0.05 * 20 lands on 1.0, not 1.0000000000000002
        return np.minimum(self.start + self.step * np.arange(count), self.stop)


@dataclass(frozen=True)
class SweepSpec:
    """One ``bias`` axis (sensitivity curve) or a ``visibility`` x
    ``efficiency`` pair (maximum-sensitivity map).  Fields of ``params`` not
    on an axis stay fixed."""

    axes: tuple[Axis, ...]
    params: FringeParams

    def __post_init__(self):
        names = tuple(a.name for a in self.axes)
        if names != ("bias",) and sorted(names) != ["efficiency", "visibility"]:
            raise ValidationError(
                f"sweep axes must be ('bias',) or visibility x efficiency, got {names}"
            )
        total = math.prod(len(a.values()) for a in self.axes)
        if total > MAX_GRID_POINTS:
            raise ValidationError(f"sweep has {total} points, limit is {MAX_GRID_POINTS}")


def sensitivity_sweep(spec: SweepSpec) -> Table:
    """Evaluate S along a bias axis, or S_M over a (V, eta) grid.

    Rows are in ascending order of the first axis, then the second.
    """
    params = spec.params
    n = params.n_photons
    if len(spec.axes) == 1:
        _require_events(params)
        bias = spec.axes[0].values()
        p = detection_probability(params.with_bias(0.0), bias)
        arg = n * bias
        s_sq = _sensitivity_sq(n, params.efficiency, params.visibility, np.sin(arg), np.cos(arg) ** 2)
        s = np.sqrt(np.maximum(s_sq, 0.0))
        return Table(("bias", "p", "S"), list(zip(bias.tolist(), np.atleast_1d(p).tolist(), s.tolist())))

    first, second = spec.axes
    g1, g2 = np.meshgrid(first.values(), second.values(), indexing="ij")
    grids = {first.name: g1.ravel(), second.name: g2.ravel()}
    eta, vis = grids["efficiency"], grids["visibility"]
    if np.any(eta < 0) or np.any(eta > 1) or np.any(vis < 0) or np.any(vis > 1):
        raise ValidationError("efficiency and visibility axes must stay within [0, 1]")
    if np.any(eta == 0):
        raise DomainError("efficiency axis must exclude 0")
    s_max = np.sqrt(_max_sensitivity_sq(n, eta, vis))
    table = Table((_AXIS_NAMES[first.name], _AXIS_NAMES[second.name], "S_M", "beats_sql"))
    for x, y, s in zip(grids[first.name].tolist(), grids[second.name].tolist(), s_max.tolist()):
        table.append((x, y, s, s > 1.0))
    return table
