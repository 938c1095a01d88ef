"""Exact two-mode Fock-space simulation of a Mach-Zehnder interferometer.

States live in a fixed total-photon sector and are stored as dense complex
vectors over the basis ``|n, total - n>`` for ``n = 0 .. total``.  The 50:50
splitter uses the symmetric convention

    a^dag -> (a^dag + i b^dag) / sqrt(2),    b^dag -> (i a^dag + b^dag) / sqrt(2)

and the phase shifter acts on the second mode.  With this convention the
internal state for ``|2,2>`` input is ``-(sqrt(3/8)|4,0> + sqrt(1/4)|2,2>
+ sqrt(3/8)|0,4>)``, i.e. the textbook real amplitudes up to a global
sign.  Only squared magnitudes are convention independent.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import FitError, ValidationError
from .fringe import FringeParams
from .table import Table

__all__ = [
    "TwoModeFockState",
    "EventProbabilities",
    "beam_splitter_matrix",
    "apply_beam_splitter",
    "apply_phase_shift",
    "mz_output_state",
    "event_probability_fringe",
    "harmonic_coefficients",
    "extract_fringe_params",
]

NORM_TOL = 1e-12
# log-factorial coefficients stay accurate to ~1e-13 up to this size
MAX_PHOTONS = 20


@dataclass(frozen=True)
class TwoModeFockState:
    """Pure state with a definite total photon number.

    ``amplitudes[n]`` is the amplitude of ``|n, total - n>``.  ``modes``
    only labels the mode pair (e.g. ``("a", "b")``) for display.
    """

    amplitudes: np.ndarray
    modes: tuple[str, str] = ("a", "b")

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.ndim != 1 or amps.size == 0:
            raise ValidationError("amplitudes must be a non-empty 1-D vector")
        if amps.size - 1 > MAX_PHOTONS:
            raise ValidationError(f"at most {MAX_PHOTONS} photons are supported")
        norm = float(np.vdot(amps, amps).real)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValidationError(f"state is not normalised: norm^2 = {norm!r}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def basis(cls, n: int, m: int, modes=("a", "b")) -> "TwoModeFockState":
        if n < 0 or m < 0:
            raise ValidationError("photon numbers must be non-negative")
        amps = np.zeros(n + m + 1, dtype=complex)
        amps[n] = 1.0
        return cls(amps, modes)

    @property
    def total_photons(self) -> int:
        return self.amplitudes.size - 1

    def amplitude(self, n: int, m: int) -> complex:
        if n + m != self.total_photons or n < 0 or m < 0:
            raise ValidationError(f"|{n},{m}> is outside the {self.total_photons}-photon sector")
        return complex(self.amplitudes[n])

    def probabilities(self) -> "EventProbabilities":
        total = self.total_photons
        probs = np.abs(self.amplitudes) ** 2
        return EventProbabilities({(n, total - n): float(probs[n]) for n in range(total + 1)})

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real))


@dataclass(frozen=True)
class EventProbabilities:
    """Output-pattern probabilities keyed by ``(n_first, n_second)``."""

    probabilities: dict = field(default_factory=dict)

    def __getitem__(self, pattern) -> float:
        return self.probabilities[tuple(pattern)]

    def total(self, patterns: Iterable[Sequence[int]]) -> float:
        out = 0.0
        for pattern in patterns:
            key = tuple(pattern)
            if key not in self.probabilities:
                raise ValidationError(f"pattern {key} is not in this photon-number sector")
            out += self.probabilities[key]
        return out


@lru_cache(maxsize=None)
def beam_splitter_matrix(total: int) -> np.ndarray:
    """Unitary of the 50:50 splitter on the ``total``-photon sector.

    ``U[p, n]`` is the amplitude ``<p, total-p| BS |n, total-n>``, built from
    the binomial expansion of the transformed creation operators.
    """
    if total < 0 or total > MAX_PHOTONS:
        raise ValidationError(f"total photons must be in [0, {MAX_PHOTONS}]")
    lf = [math.lgamma(j + 1) for j in range(total + 1)]
    u = np.zeros((total + 1, total + 1), dtype=complex)
    for n in range(total + 1):
        m = total - n
        for j in range(n + 1):  # b^dag factors drawn from the first mode's operator
            for l in range(m + 1):  # a^dag factors drawn from the second mode's operator
                p = n - j + l
                q = total - p
                log_mag = (
                    lf[n] - lf[j] - lf[n - j]
                    + lf[m] - lf[l] - lf[m - l]
                    + 0.5 * (lf[p] + lf[q] - lf[n] - lf[m])
                    - 0.5 * total * math.log(2.0)
                )
                u[p, n] += 1j ** ((j + l) % 4) * math.exp(log_mag)
    u.flags.writeable = False
    return u


def apply_beam_splitter(state: TwoModeFockState) -> TwoModeFockState:
    out = beam_splitter_matrix(state.total_photons) @ state.amplitudes
    return TwoModeFockState(out, state.modes)


def apply_phase_shift(state: TwoModeFockState, phase: float) -> TwoModeFockState:
    """Multiply the amplitude of ``|n, m>`` by ``exp(i m phase)``."""
    m = state.total_photons - np.arange(state.total_photons + 1)
    return TwoModeFockState(state.amplitudes * np.exp(1j * m * phase), state.modes)


def mz_output_state(state: TwoModeFockState, phase: float) -> TwoModeFockState:
    """Splitter, phase shift on the second arm, splitter."""
    return apply_beam_splitter(apply_phase_shift(apply_beam_splitter(state), phase))


def _check_patterns(total: int, patterns) -> list[tuple[int, int]]:
    out = []
    for pattern in patterns:
        n, m = (int(x) for x in pattern)
        if n < 0 or m < 0 or n + m != total:
            raise ValidationError(f"pattern ({n},{m}) is not in the {total}-photon sector")
        out.append((n, m))
    if not out:
        raise ValidationError("at least one output pattern is required")
    return out


def event_probability_fringe(state: TwoModeFockState, patterns, phases) -> Table:
    """Summed probability of ``patterns`` at the MZ output for each phase.

    Returns a table with columns ``phi, P``.
    """
    total = state.total_photons
    idx = [n for n, _ in _check_patterns(total, patterns)]
    phases = np.asarray(phases, dtype=float).ravel()
    if not np.all(np.isfinite(phases)):
        raise ValidationError("phases must be finite")
    u = beam_splitter_matrix(total)
    inner = u @ state.amplitudes
    m = total - np.arange(total + 1)
    # all grid points at once: columns are phase-shifted internal states
    shifted = inner[:, None] * np.exp(1j * np.outer(m, phases))
    out = np.abs(u @ shifted) ** 2
    probs = out[idx].sum(axis=0)
    return Table(("phi", "P"), list(zip(phases.tolist(), probs.tolist())))


def harmonic_coefficients(phases, values, max_harmonic: int) -> np.ndarray:
    """Least-squares fit ``c0 + sum_h a_h cos(h phi) + b_h sin(h phi)``.

    Returns an array of shape ``(max_harmonic + 1, 2)``: row 0 is
    ``(c0, 0)``, row ``h`` is ``(a_h, b_h)``.
    """
    phases = np.asarray(phases, dtype=float)
    values = np.asarray(values, dtype=float)
    cols = [np.ones_like(phases)]
    for h in range(1, max_harmonic + 1):
        cols += [np.cos(h * phases), np.sin(h * phases)]
    design = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    out = np.zeros((max_harmonic + 1, 2))
    out[0, 0] = coef[0]
    out[1:] = coef[1:].reshape(max_harmonic, 2)
    return out


def extract_fringe_params(phases, values, n_photons: int, rtol: float = 1e-6) -> FringeParams:
    """Recover ``(eta, V, bias)`` from a sampled fringe.

    Fits offset plus one sinusoid at frequency ``n_photons``; ``eta`` is twice
    the offset and ``V`` the amplitude over the offset.  Raises
    :class:`FitError` if the RMS residual exceeds ``rtol`` times the fringe
    scale or the grid does not cover a full period with 16 points.
    """
    phases = np.asarray(phases, dtype=float)
    values = np.asarray(values, dtype=float)
    if phases.shape != values.shape or phases.ndim != 1:
        raise ValidationError("phases and values must be 1-D arrays of equal length")
    if phases.size < 16:
        raise FitError(f"need at least 16 samples, got {phases.size}")
    period = 2.0 * math.pi / n_photons
    # an endpoint-excluded grid spans one period minus one spacing
    spacing = float(np.median(np.diff(np.sort(phases))))
    if np.ptp(phases) + spacing < period * (1.0 - 1e-9):
        raise FitError("samples do not cover a full fringe period")

    arg = n_photons * phases
    design = np.column_stack([np.ones_like(phases), np.cos(arg), np.sin(arg)])
    (offset, a, b), *_ = np.linalg.lstsq(design, values, rcond=None)
    amplitude = math.hypot(a, b)
    residual = float(np.sqrt(np.mean((design @ np.array([offset, a, b]) - values) ** 2)))
    scale = max(abs(offset), amplitude)
    if residual > rtol * scale + 1e-15:
        raise FitError(f"fringe is not a pure frequency-{n_photons} sinusoid (rms residual {residual:.3g})")
    if offset <= 0:
        raise FitError("fitted fringe has non-positive mean level")

    eta = 2.0 * offset
    vis = amplitude / offset
    # snap fit rounding at the physical bounds
    if 1.0 < eta <= 1.0 + 1e-9:
        eta = 1.0
    if 1.0 < vis <= 1.0 + 1e-9:
        vis = 1.0
    # p = offset + A [sin(N bias) cos(N phi) + cos(N bias) sin(N phi)]
    bias = math.atan2(a, b) / n_photons if amplitude > 0 else 0.0
    return FringeParams(n_photons, eta, vis, bias)
