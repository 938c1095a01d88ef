#!/usr/bin/env python3
"""Maximum sensitivity over the (V, eta) square and the SQL boundary."""
import argparse
from pathlib import Path

import numpy as np

from nphoton import Axis, FringeParams, SweepSpec, max_sensitivity, sensitivity_sweep, sql_thresholds


def sql_boundary(n, vis_grid):
    """Smallest eta with S_M > 1 for each visibility, by bisection."""
    out = []
    for v in vis_grid:
        if max_sensitivity(FringeParams(n, 1.0, v)) <= 1.0:
            out.append(np.nan)
            continue
        lo, hi = 1e-9, 1.0
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if max_sensitivity(FringeParams(n, mid, v)) > 1.0:
                hi = mid
            else:
                lo = mid
        out.append(hi)
    return np.array(out)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=4)
    parser.add_argument("--step", type=float, default=0.01)
    parser.add_argument("--out-dir", type=Path, default=Path("results/fig2"))
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    axes = (Axis("visibility", args.step, 1.0, args.step), Axis("efficiency", args.step, 1.0, args.step))
    grid = sensitivity_sweep(SweepSpec(axes, FringeParams(args.n, 1.0, 1.0)))
    with open(args.out_dir / f"contour_n{args.n}.csv", "w", newline="") as fh:
        grid.write_csv(fh)

    vis = axes[0].values()
    eta_min = sql_boundary(args.n, vis)
    with open(args.out_dir / f"sql_boundary_n{args.n}.csv", "w", newline="") as fh:
        fh.write("V,eta_min\n")
        for v, e in zip(vis, eta_min):
            fh.write(f"{v:.15g},{'' if np.isnan(e) else format(e, '.15g')}\n")

    v_thr, e_thr = sql_thresholds(args.n)
    print(f"N = {args.n}: SQL beaten only for V > {v_thr:.4g} (at eta = 1) and eta > {e_thr:.4g} (at V = 1)")
    print(f"S_M at (eta, V) = (0.75, 0.82): {max_sensitivity(FringeParams(args.n, 0.75, 0.82)):.4f}")
    print(f"fraction of grid beating the SQL: {np.mean(grid.column('beats_sql')):.3f}")


if __name__ == "__main__":
    main()
