"""Shared oracles and family generators for the test suite.

The oracles here are deliberately naive (exhaustive subset scans, full
permutation orbits) so they are correct by inspection and independent of
the implementations under test.
"""
from __future__ import annotations

import random
from itertools import combinations, permutations

from kfam.families import Family, mask_of


def brute_is_intersecting(fam: Family) -> bool:
    ms = fam.members
    return all(a & b for i, a in enumerate(ms) for b in ms[i + 1 :])


def brute_tau(fam: Family):
    """Smallest size of a set meeting every member, by exhaustive scan."""
    if not fam.members:
        return 0
    if any(m == 0 for m in fam.members):
        return float("inf")
    ground = list(range(1, fam.n + 1))
    for t in range(1, fam.n + 1):
        for cand in combinations(ground, t):
            cm = mask_of(cand)
            if all(cm & m for m in fam.members):
                return t
    return float("inf")


def brute_count_hitting(fam: Family, t: int) -> int:
    if any(m == 0 for m in fam.members):
        return 0
    count = 0
    for cand in combinations(range(1, fam.n + 1), t):
        cm = mask_of(cand)
        if all(cm & m for m in fam.members):
            count += 1
    return count


def perm_canonical(fam: Family) -> tuple:
    """Lexicographically least relabeling over the full symmetric group.

    Only viable for small n; used to certify canonical_form.
    """
    best = None
    for perm in permutations(range(fam.n)):
        relabeled = []
        for m in fam.members:
            out = 0
            rest = m
            while rest:
                low = rest & -rest
                out |= 1 << perm[low.bit_length() - 1]
                rest ^= low
            relabeled.append(out)
        key = tuple(sorted(relabeled))
        if best is None or key < best:
            best = key
    return best


def random_uniform_family(rng: random.Random, n: int, k: int, size: int) -> Family:
    pool = [mask_of(c) for c in combinations(range(1, n + 1), k)]
    size = min(size, len(pool))
    return Family.from_masks(n, rng.sample(pool, size))


def random_intersecting_family(rng: random.Random, n: int, k: int, target: int) -> Family:
    """Greedy intersecting family along a shuffled order of all k-sets."""
    pool = [mask_of(c) for c in combinations(range(1, n + 1), k)]
    rng.shuffle(pool)
    out = []
    for m in pool:
        if len(out) >= target:
            break
        if all(m & o for o in out):
            out.append(m)
    return Family.from_masks(n, out)
