#!/usr/bin/env python3
"""Reproduce the reference M=400 optimization, checkpointed and resumable.

Writes the optimized parameters plus rho/constant to --out and prints a
short progress trace.  Rerun with the same flags to reproduce bit-identical
output; rerun with --resume <out>.checkpoint.json to continue after an
interruption.
"""

import argparse
import sys
import time

from b2gbounds import jsonutil, optimize


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, default=400)
    ap.add_argument("--init", default="paper")
    ap.add_argument("--out", default="reference_opt.json")
    ap.add_argument("--checkpoint-every", type=int, default=200)
    ap.add_argument("--resume")
    args = ap.parse_args()

    trace = {"count": 0, "t0": time.perf_counter()}

    def progress(x):
        trace["count"] += 1
        if trace["count"] % 100 == 0:
            dt = time.perf_counter() - trace["t0"]
            print(f"  iter {trace['count']:6d}  {dt:8.1f}s", file=sys.stderr)

    result = optimize(
        args.m,
        args.init,
        checkpoint_every=args.checkpoint_every,
        checkpoint_path=args.out + ".checkpoint.json",
        resume=args.resume,
        callback=progress,
    )
    obj = jsonutil.params_to_obj(
        result.params,
        extra={
            "rho": result.rho,
            "constant": result.constant,
            "iterations": result.iterations,
            "converged": result.converged,
        },
    )
    jsonutil.write_text_atomic(args.out, jsonutil.dumps(obj))
    print(
        f"M={args.m}  constant={jsonutil.fmt17(result.constant)}  "
        f"iterations={result.iterations}  converged={result.converged}\n"
        f"wrote {args.out}"
    )


if __name__ == "__main__":
    main()
