#!/usr/bin/env python3
"""Exact values of the max size of an intersecting k-uniform family over [n]
with covering number >= t, next to the closed forms they should match at
t = 1, 2 and the three-base construction at t = 3.

Usage: python3 scripts/cnkt_table.py [--nmax 9] [--k 3] [--tmax 3] [--classes]

Small n only; the oracle is an exact branch and bound.  --classes also counts
optimal isomorphism classes (slower).
"""
import argparse
import time

from kfam.formulas import binom, hm_size, size_c3
from kfam.search import max_intersecting_tau


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--nmax", type=int, default=9)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--tmax", type=int, default=3)
    ap.add_argument("--classes", action="store_true")
    args = ap.parse_args()

    k = args.k
    head = f"{'n':>4} {'t':>3} {'c(n,k,t)':>9} {'reference':>10} {'time':>8}"
    if args.classes:
        head += f" {'#classes':>9}"
    print(f"k = {k}")
    print(head)
    prev = {}
    for n in range(2 * k + 1, args.nmax + 1):
        for t in range(1, args.tmax + 1):
            t0 = time.perf_counter()
            res = max_intersecting_tau(n, k, t, all_optima=args.classes)
            dt = time.perf_counter() - t0
            if t == 1:
                ref = f"{binom(n - 1, k - 1)} star"
            elif t == 2:
                ref = f"{hm_size(n, k)} hm"
            else:
                ref = f">={size_c3(n, k)} c3" if n >= 2 * k else "-"
            row = f"{n:>4} {t:>3} {res.optimum:>9} {ref:>10} {dt:>7.2f}s"
            if args.classes:
                row += f" {len(res.witnesses):>9}"
            # c(n,k,t) is non-increasing in t at fixed n
            if (n, t - 1) in prev and res.optimum > prev[(n, t - 1)]:
                row += "  <-- monotonicity broken"
            prev[(n, t)] = res.optimum
            print(row)
        print()


if __name__ == "__main__":
    main()
