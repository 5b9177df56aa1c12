#!/usr/bin/env python3
"""Finite-difference oracle: observed order and Richardson accuracy vs Ritz values."""

import math

import numpy as np

from ritzbound import models, oracle, rrvm


def main():
    exact = math.pi**2 / 2
    print("free box, level 1: grid, error, observed order")
    prev = None
    for m in (125, 250, 500, 1000, 2000, 4000):
        err = abs(oracle.fd_eigenvalues(oracle.FdSpec(0.0, m, 1))[0] - exact)
        order = f"{math.log2(prev / err):.3f}" if prev else "-"
        print(f"{m:6d}  {err:.3e}  {order}")
        prev = err

    ritz = rrvm.run(models.tilted_box(1.0), rrvm.ConvergencePolicy(n_min=40, n_max=40), 4).values[0]
    print("\nlambda = 1: Ritz N=40 vs Richardson oracle")
    for m in (500, 1000, 2000, 4000):
        est = oracle.estimate(1.0, 4, m)
        gap = np.abs(est.values - ritz)
        print(f"M={m:5d}  |gap| " + " ".join(f"{g:.1e}" for g in gap)
              + "   error_bar " + " ".join(f"{e:.1e}" for e in est.error_bar))


if __name__ == "__main__":
    main()
