"""Phase sensitivity of N-photon interferometers."""
from .errors import DomainError, FitError, NoInformationError, NPhotonError, ValidationError
from .fock import (
    EventProbabilities,
    TwoModeFockState,
    apply_beam_splitter,
    apply_phase_shift,
    event_probability_fringe,
    extract_fringe_params,
    mz_output_state,
)
from .fringe import FringeParams, detection_probability, probability_slope, trial_variance
from .montecarlo import (
    TrialConfig,
    TrialReport,
    estimate_phase,
    run_experiments,
    sensitivity_from_trials,
)
from .sensitivity import (
    NO_INFORMATION,
    Axis,
    SensitivityReport,
    SweepSpec,
    analyze,
    max_sensitivity,
    optimal_bias,
    phase_error_excess_form,
    phase_error_squared,
    sensitivity,
    sensitivity_sweep,
    sql_thresholds,
)
from .table import Table

__version__ = "0.1.0"
