"""Command-line front end.

Subcommands: sensitivity, fringe, contour, simulate, montecarlo.  Tables go
to ``--out`` or stdout as CSV; the human-readable report goes to stdout when
a file is written and to stderr otherwise, so piping CSV stays clean.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .errors import NPhotonError
from .fock import TwoModeFockState, event_probability_fringe, extract_fringe_params
from .fringe import FringeParams, detection_probability, probability_slope
from .montecarlo import TrialConfig, run_experiments, sensitivity_from_trials
from .sensitivity import (
    NO_INFORMATION,
    Axis,
    SweepSpec,
    analyze,
    optimal_bias,
    sensitivity,
    sensitivity_sweep,
)
from .table import Table, format_cell

DEFAULT_POINTS = 512


def _unit_interval(text: str) -> float:
    value = float(text)
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return value


def _positive_int(text: str) -> int:
    value = int(float(text)) if "e" in text.lower() else int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text} is not a positive integer")
    return value


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"{text} is not finite")
    return value


def _pair(text: str) -> tuple[int, int]:
    try:
        n, m = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'n,m', got {text!r}") from None
    if n < 0 or m < 0:
        raise argparse.ArgumentTypeError(f"photon numbers must be non-negative: {text!r}")
    return n, m


class _Angles:
    """Converts user-facing angles to and from radians."""

    def __init__(self, degrees: bool):
        self.scale = math.pi / 180.0 if degrees else 1.0

    def inward(self, value):
        return None if value is None else value * self.scale

    def outward(self, value):
        return value / self.scale


def _fringe_params(args, bias=0.0) -> FringeParams:
    return FringeParams(args.n, args.eta, args.visibility, bias)


def _phase_grid(args, angles: _Angles, default_stop: float) -> np.ndarray:
    start = angles.inward(args.start)
    stop = default_stop if args.stop is None else angles.inward(args.stop)
    if not stop > start:
        raise NPhotonError("grid stop must exceed start")
    if args.step is not None:
        step = angles.inward(args.step)
        count = int(math.floor((stop - start) / step + 1e-9))
        if count > 10**7:
            raise NPhotonError("grid has more than 10^7 points")
        return start + step * np.arange(max(count, 1))
    return np.linspace(start, stop, args.points, endpoint=False)


def _emit(table: Table, out) -> None:
    if out:
        with open(out, "w", newline="", encoding="ascii") as fh:
            table.write_csv(fh)
    else:
        table.write_csv(sys.stdout)


def _report_stream(args):
    return sys.stdout if args.out else sys.stderr


def _add_fringe_flags(p: argparse.ArgumentParser, defaults: bool = False) -> None:
    p.add_argument("--n", type=_positive_int, required=not defaults, default=4 if defaults else None,
                   help="photon number N")
    p.add_argument("--eta", type=_unit_interval, required=not defaults, default=0.75 if defaults else None,
                   help="intrinsic efficiency")
    p.add_argument("--visibility", type=_unit_interval, required=not defaults,
                   default=0.82 if defaults else None, help="fringe visibility")


def _add_grid_flags(p: argparse.ArgumentParser, stop_help: str) -> None:
    p.add_argument("--start", type=_finite, default=0.0)
    p.add_argument("--stop", type=_finite, default=None, help=stop_help)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--points", type=_positive_int, default=DEFAULT_POINTS,
                   help=f"grid points, stop excluded (default {DEFAULT_POINTS})")
    g.add_argument("--step", type=_finite, default=None)


def cmd_sensitivity(args) -> int:
    angles = _Angles(args.degrees)
    bias = angles.inward(args.bias)
    params = _fringe_params(args, 0.0 if bias is None else bias)
    rep = analyze(params)
    print(f"N = {params.n_photons}, eta = {params.efficiency:g}, V = {params.visibility:g}")
    if bias is not None:
        print(f"S at bias {args.bias:g} = {rep.sensitivity_at_bias:.6g}")
        err = rep.phase_error_per_trial
        shown = err.value if err is NO_INFORMATION else f"{err:.6g}"
        print(f"single-trial phase error^2 = {shown}")
    if rep.optimal_bias is None:
        print("optimal bias: none (V = 0, sensitivity vanishes everywhere)")
    else:
        print(f"sin(N phi_opt) = {rep.optimal_bias_sine:.6g}")
        print(f"phi_opt = {angles.outward(rep.optimal_bias):.6g}")
    print(f"S_M = {rep.max_sensitivity:.6g}")
    print(f"beats SQL: {'yes' if rep.beats_sql else 'no'}")
    print(f"Heisenberg ratio S_M/sqrt(N) = {rep.heisenberg_ratio:.6g}"
          + (" (Heisenberg limit)" if abs(rep.heisenberg_ratio - 1.0) <= 1e-12 else ""))
    if args.out:
        table = Table(("n", "eta", "V", "bias", "S", "sin_opt", "phi_opt", "S_M", "beats_sql",
                       "heisenberg_ratio"))
        table.append((
            params.n_photons, params.efficiency, params.visibility, angles.outward(params.bias),
            rep.sensitivity_at_bias,
            "" if rep.optimal_bias_sine is None else rep.optimal_bias_sine,
            "" if rep.optimal_bias is None else angles.outward(rep.optimal_bias),
            rep.max_sensitivity, rep.beats_sql, rep.heisenberg_ratio,
        ))
        _emit(table, args.out)
    return 0


def cmd_fringe(args) -> int:
    angles = _Angles(args.degrees)
    params = _fringe_params(args, angles.inward(args.bias))
    phases = _phase_grid(args, angles, params.period)
    p = np.atleast_1d(detection_probability(params, phases))
    slope = np.atleast_1d(probability_slope(params, phases))
    table = Table(("phi", "p", "dp_dphi", "S"))
    for phi, pi, si in zip(phases.tolist(), p.tolist(), slope.tolist()):
        s = sensitivity(params.with_bias(params.bias + phi))
        # dp/dphi per emitted angle unit
        table.append((angles.outward(phi), pi, si * angles.scale, s))
    _emit(table, args.out)
    return 0


def cmd_contour(args) -> int:
    step = args.step
    if not 0.0 < step <= 1.0:
        raise NPhotonError("--step must lie in (0, 1]")
    spec = SweepSpec(
        (Axis("visibility", step, 1.0, step), Axis("efficiency", step, 1.0, step)),
        FringeParams(args.n, 1.0, 1.0),
    )
    _emit(sensitivity_sweep(spec), args.out)
    return 0


def cmd_simulate(args) -> int:
    angles = _Angles(args.degrees)
    n, m = args.input
    total = n + m
    if total == 0:
        raise NPhotonError("input state must contain at least one photon")
    patterns = args.patterns
    if patterns is None:
        patterns = [(3, 1), (1, 3)] if total == 4 else [(total, 0)]
    state = TwoModeFockState.basis(n, m)
    phases = _phase_grid(args, angles, 2.0 * math.pi)
    fringe = event_probability_fringe(state, patterns, phases)
    out = Table(("phi", "P"), [(angles.outward(phi), prob) for phi, prob in fringe.rows])
    _emit(out, args.out)
    fit = extract_fringe_params(fringe.column("phi"), fringe.column("P"), total)
    stream = _report_stream(args)
    label = " + ".join(f"({a},{b})" for a, b in patterns)
    print(f"input |{n},{m}>, patterns {label}", file=stream)
    print(f"eta = {format_cell(fit.efficiency)}", file=stream)
    print(f"V = {format_cell(fit.visibility)}", file=stream)
    print(f"bias = {format_cell(angles.outward(fit.bias))}", file=stream)
    return 0


def cmd_montecarlo(args) -> int:
    angles = _Angles(args.degrees)
    base = _fringe_params(args)
    if args.bias == "opt":
        bias = optimal_bias(base)[1]
    else:
        try:
            bias = angles.inward(_finite(args.bias))
        except (ValueError, argparse.ArgumentTypeError):
            raise NPhotonError(f"--bias must be a number or 'opt', got {args.bias!r}") from None
    config = TrialConfig(
        params=base.with_bias(bias),
        true_phase=angles.inward(args.true_phase),
        trials_per_experiment=args.trials,
        experiment_repeats=args.repeats,
        rng_seed=args.seed,
    )
    report = run_experiments(config)
    table = report.to_table()
    table = Table(table.columns, [(i, c, angles.outward(e)) for i, c, e in table.rows])
    _emit(table, args.out)
    stream = _report_stream(args)
    k = config.trials_per_experiment
    print(f"bias = {format_cell(angles.outward(bias))}", file=stream)
    print(f"mean count / k = {report.mean_count / k:.8g}", file=stream)
    print(f"count variance / k = {report.count_variance / k:.6g}", file=stream)
    print(f"empirical phase error = {angles.outward(report.empirical_phase_error):.6g}", file=stream)
    print(f"analytic phase error = {angles.outward(report.analytic_phase_error):.6g}", file=stream)
    print(f"ratio = {report.ratio:.6g}", file=stream)
    print(f"empirical S = {sensitivity_from_trials(report, config):.6g}", file=stream)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nphoton", description="Phase sensitivity of N-photon interference fringes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sensitivity", help="S at a bias, optimal bias and maximum sensitivity")
    _add_fringe_flags(p)
    p.add_argument("--bias", type=_finite, default=None)
    p.add_argument("--degrees", action="store_true", help="angles in degrees")
    p.add_argument("--out", default=None, help="also write a one-row CSV here")
    p.set_defaults(func=cmd_sensitivity)

    p = sub.add_parser("fringe", help="CSV of p, dp/dphi and S over a phase grid")
    _add_fringe_flags(p)
    p.add_argument("--bias", type=_finite, default=0.0)
    _add_grid_flags(p, "grid end (default one period 2 pi / N)")
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_fringe)

    p = sub.add_parser("contour", help="CSV of S_M over a (V, eta) grid")
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--step", type=_finite, default=0.05)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("simulate", help="Fock-state MZ fringe and extracted (eta, V)")
    p.add_argument("--input", type=_pair, default=(2, 2), help="input photon numbers 'n,m'")
    p.add_argument("--patterns", type=_pair, nargs="+", default=None,
                   help="output patterns to sum, e.g. 3,1 1,3 (default: 3,1 1,3 for four "
                        "photons, otherwise all photons in the first output)")
    _add_grid_flags(p, "grid end (default 2 pi)")
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("montecarlo", help="binomial trial simulation of the phase error")
    _add_fringe_flags(p, defaults=True)
    p.add_argument("--bias", default="0.15", help="bias phase, or 'opt' for the optimum")
    p.add_argument("--true-phase", type=_finite, default=0.002)
    p.add_argument("--trials", type=_positive_int, default=1_000_000)
    p.add_argument("--repeats", type=_positive_int, default=500)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--degrees", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_montecarlo)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NPhotonError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
