#!/usr/bin/env python3
"""Map the one-parameter family's limiting constant over a lambda window.

Prints a coarse grid (CSV on stdout), then refines the best window and
reports the minimizer.  Useful for picking truncation-free baselines.
"""

import argparse

from b2gbounds import YuParams, jsonutil, lambda_refine, yu_constant


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lo", type=float, default=0.70)
    ap.add_argument("--hi", type=float, default=0.80)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--tol-lambda", type=float, default=1e-6)
    args = ap.parse_args()

    print("lambda,constant")
    best = (None, float("inf"))
    for i in range(args.steps + 1):
        lam = args.lo + (args.hi - args.lo) * i / args.steps
        value = yu_constant(YuParams(lam, "limit"), tol=1e-10)
        print(f"{jsonutil.fmt17(lam)},{jsonutil.fmt17(value)}")
        if value < best[1]:
            best = (lam, value)

    width = (args.hi - args.lo) / args.steps
    lo = max(args.lo, best[0] - width)
    hi = min(args.hi, best[0] + width)
    lam_star, constant = lambda_refine((lo, hi), tol_lambda=args.tol_lambda)
    print(
        f"# refined minimizer lambda = {jsonutil.fmt17(lam_star)}  "
        f"constant = {jsonutil.fmt17(constant)}"
    )


if __name__ == "__main__":
    main()
