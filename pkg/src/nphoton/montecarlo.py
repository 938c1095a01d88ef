"""Monte Carlo check of the binomial error-propagation formula.

Each experiment runs ``k`` Bernoulli trials at the true phase, counts the
selected events, and inverts the count linearly around the bias point.  The
spread of the resulting estimates over ``R`` repeats is compared with the
analytic phase error.

Randomness: ``numpy.random.SeedSequence(seed).spawn(R)`` gives one PCG64
stream per repeat, and each repeat draws a single ``Generator.binomial``
sample.  Repeats are therefore independent of evaluation order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoInformationError, ValidationError
from .fringe import FringeParams, detection_probability, probability_slope
from .sensitivity import ZERO_SLOPE_TOL, phase_error_squared
from .table import Table

__all__ = [
    "TrialConfig",
    "TrialReport",
    "run_experiments",
    "estimate_phase",
    "sensitivity_from_trials",
]


@dataclass(frozen=True)
class TrialConfig:
    params: FringeParams
    true_phase: float = 0.0
    trials_per_experiment: int = 1_000_000
    experiment_repeats: int = 500
    rng_seed: int = 42

    def __post_init__(self):
        for name in ("trials_per_experiment", "experiment_repeats"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value or value < 1:
                raise ValidationError(f"{name} must be a positive integer, got {value!r}")
        if not 0 <= self.rng_seed < 2**64:
            raise ValidationError("rng_seed must be a 64-bit unsigned integer")
        if not math.isfinite(self.true_phase):
            raise ValidationError("true_phase must be finite")


@dataclass(frozen=True)
class TrialReport:
    counts: np.ndarray
    mean_count: float
    count_variance: float
    phase_estimates: np.ndarray
    empirical_phase_error: float
    analytic_phase_error: float
    ratio: float

    def to_table(self) -> Table:
        rows = zip(range(len(self.counts)), self.counts.tolist(), self.phase_estimates.tolist())
        return Table(("repeat", "count", "phi_hat"), list(rows))


def _bias_slope(params: FringeParams) -> float:
    if params.visibility == 0.0 or abs(math.cos(params.n_photons * params.bias)) <= ZERO_SLOPE_TOL:
        raise NoInformationError(
            "no local information: the fringe slope vanishes at this bias"
        )
    return probability_slope(params, 0.0)


def estimate_phase(observed_count, config: TrialConfig):
    """Linear inversion ``(C/k - p(0)) / p'(0)`` around the bias."""
    params = config.params
    slope = _bias_slope(params)
    k = config.trials_per_experiment
    counts = np.asarray(observed_count, dtype=float)
    est = (counts / k - detection_probability(params, 0.0)) / slope
    return float(est) if est.ndim == 0 else est


def run_experiments(config: TrialConfig) -> TrialReport:
    params = config.params
    slope = _bias_slope(params)
    p = detection_probability(params, config.true_phase)
    if p <= 0.0 or p >= 1.0:
        raise DomainError(f"event probability {p} at the true phase is 0 or 1; counts never fluctuate")

    k = config.trials_per_experiment
    seeds = np.random.SeedSequence(config.rng_seed).spawn(config.experiment_repeats)
    counts = np.array([np.random.default_rng(s).binomial(k, p) for s in seeds], dtype=np.int64)
    estimates = estimate_phase(counts, config)
    estimates = np.atleast_1d(estimates)

    repeats = config.experiment_repeats
    ddof = 1 if repeats > 1 else 0
    empirical = float(np.std(estimates, ddof=ddof))
    analytic = math.sqrt(phase_error_squared(params, k))
    return TrialReport(
        counts=counts,
        mean_count=float(np.mean(counts)),
        count_variance=float(np.var(counts, ddof=ddof)),
        phase_estimates=estimates,
        empirical_phase_error=empirical,
        analytic_phase_error=analytic,
        ratio=empirical / analytic,
    )


def sensitivity_from_trials(report: TrialReport, config: TrialConfig) -> float:
    """Empirical ``S = (k N dphi^2)^(-1/2)`` from the spread of estimates."""
    err = report.empirical_phase_error
    if not err > 0.0:
        raise DomainError("empirical phase error is zero; sensitivity is undefined")
    return 1.0 / math.sqrt(config.trials_per_experiment * config.params.n_photons * err**2)
