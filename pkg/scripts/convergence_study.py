#!/usr/bin/env python3
"""Step-size refinement tables for the covariance propagator and the heat
integral.

Two tables:
  1. RK4 step refinement of the covariance-matrix propagation against the
     closed map, with the observed convergence order.
  2. Trapezoid heat-integral error vs grid spacing, next to the built-in
     half-grid Richardson estimate that the ledger reports.
"""

import argparse
import math
import sys

import numpy as np

from cascade_thermo.analysis import integrate_heat
from cascade_thermo.gaussian import (
    GaussianParams,
    closed_flux_trajectory,
    correlated_cov,
    evolve_cov,
    family_cov_closed,
)


def rk4_table(steps):
    p = GaussianParams(1.0, 0.0, 1.0)
    c0 = correlated_cov(1.0, 0.6, 0.2)
    grid = np.linspace(0.0, 4.0, 5)
    print(f"{'step':>10} {'max error':>12} {'order':>7}")
    prev = None
    for h in steps:
        covs = evolve_cov(c0, p, grid, step=h)
        err = max(
            float(np.max(np.abs(cov.c - family_cov_closed(p, 0.6, 0.2, t).c)))
            for t, cov in zip(grid, covs)
        )
        order = "" if prev is None else f"{math.log2(prev / max(err, 1e-300)):7.2f}"
        print(f"{h:10.4f} {err:12.3e} {order:>7}")
        prev = err


def heat_table(dts):
    p = GaussianParams(1.0, 0.0, 1.0)
    print(f"{'dt':>10} {'|Q_inf - 2|':>12} {'richardson':>12}")
    for dt in dts:
        grid = np.arange(0.0, 60.0 + dt / 2, dt)
        led = integrate_heat(closed_flux_trajectory(p, grid))
        print(f"{dt:10.4f} {abs(led.q_infinity - 2.0):12.3e} {led.richardson_error:12.3e}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--steps", nargs="*", type=float, default=[0.04, 0.02, 0.01, 0.005, 0.0025])
    ap.add_argument("--dts", nargs="*", type=float, default=[0.02, 0.01, 0.005, 0.0025])
    args = ap.parse_args(argv)
    print("covariance propagation, RK4 vs closed map")
    rk4_table(args.steps)
    print()
    print("released heat, trapezoid vs exact 2 N_S")
    heat_table(args.dts)
    return 0


if __name__ == "__main__":
    sys.exit(main())
