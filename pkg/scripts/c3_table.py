#!/usr/bin/env python3
"""Tabulate the three-base construction: enumerated size vs the closed form,
plus the certified covering number.

Usage: python3 scripts/c3_table.py [--kmax 6] [--extra 6]
"""
import argparse

from kfam.constructions import c3
from kfam.covers import covering_number
from kfam.formulas import size_c3


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmax", type=int, default=6)
    ap.add_argument("--extra", type=int, default=6, help="rows per k: n from 2k+1 to 2k+extra")
    args = ap.parse_args()

    print(f"{'n':>4} {'k':>3} {'enumerated':>11} {'formula':>8} {'tau':>4}")
    for k in range(3, args.kmax + 1):
        for n in range(2 * k + 1, 2 * k + args.extra + 1):
            fam = c3(n, k)
            got, want = len(fam), size_c3(n, k)
            tau = covering_number(fam).tau
            flag = "" if got == want and tau == 3 else "  <-- MISMATCH"
            print(f"{n:>4} {k:>3} {got:>11} {want:>8} {tau:>4}{flag}")
        print()


if __name__ == "__main__":
    main()
