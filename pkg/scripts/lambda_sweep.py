#!/usr/bin/env python3
"""Monotone-bound check across field strengths.

For each lambda, solves N = 2..n_max with stride 1 and reports the worst
monotonicity and interlacing margins, plus the oracle lower-bound margin
at the largest N.
"""

import argparse

from ritzbound import models, oracle, rrvm

def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--lambdas", type=float, nargs="+", default=[-10, -5, -1, 0, 1, 5, 10, 50])
    parser.add_argument("--n-max", type=int, default=30)
    parser.add_argument("--levels", type=int, default=4)
    args = parser.parse_args()

    policy = rrvm.ConvergencePolicy(n_max=args.n_max, n_step=1)
    print(f"{'lambda':>8} {'E1(N_max)':>16} {'mono margin':>12} {'interlace':>12} {'oracle margin':>14}")
    for lam in args.lambdas:
        seq = rrvm.run(models.tilted_box(lam), policy, levels=args.levels)
        mono = rrvm.verify_monotonicity(seq)
        inter = rrvm.verify_interlacing(seq)
        est = oracle.estimate(lam, levels=args.levels)
        lower = oracle.cross_validate(seq, est)
        flag = "" if mono.ok and inter.ok and lower.ok else "  VIOLATION"
        print(f"{lam:8.2f} {seq.values[-1][0]:16.10f} {mono.worst_slack:12.2e} "
              f"{inter.worst_slack:12.2e} {lower.worst_slack:14.2e}{flag}")

if __name__ == "__main__":
    main()
