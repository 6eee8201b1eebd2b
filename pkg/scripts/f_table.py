#!/usr/bin/env python3
"""Exact F(g, N) table by branch and bound; CSV on stdout.

Each row carries the lexicographically smallest maximal witness, so the
table is reproducible byte for byte across thread counts.
"""

import argparse
import csv
import sys

from b2gbounds import f_table


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--nmax", type=int, default=25)
    ap.add_argument("--threads", type=int, default=4)
    args = ap.parse_args()

    writer = csv.writer(sys.stdout)
    writer.writerow(["g", "N", "F", "witness"])
    for g, n, size, elems in f_table(args.g, args.nmax, threads=args.threads):
        writer.writerow([g, n, size, " ".join(map(str, elems))])


if __name__ == "__main__":
    main()
